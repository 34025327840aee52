//! Word semantics: evaluation as tree automorphisms through sparse section
//! maps, portraits, vertex actions, budgeted triviality/equality decisions
//! and stabilizer membership.
//!
//! Conventions (these make b(2) = a^-1*b*a carry the sections
//! (1, b_1, a_1, 1, ..., 1) literally):
//!
//! * right action, composition left to right;
//! * section law: section_v(u*w) = section_v(u) * section_{v*u}(w);
//! * `a` sends child k to k+1 (mod l_n), 1-based.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::tree::{PrimeSequence, VertexPath};
use crate::words::{render_word, Letter, Symbol, Word};

/// Default budget (recursion nodes visited) for triviality decisions.
pub const DEFAULT_BUDGET: u64 = 100_000;

/// Index in [1, l] of an integer taken mod l, 1-based (l stands for 0).
fn one_based_mod(x: &BigInt, l: &BigUint) -> BigUint {
    let l_int = BigInt::from(l.clone());
    let r = (x - BigInt::one()).mod_floor(&l_int);
    (r + BigInt::one()).to_biguint().unwrap()
}

/// The a-exponent sum of the word, reduced modulo its level's prime: the
/// permutation the word induces on the children of its root.
pub fn root_exponent(word: &Word, seq: &PrimeSequence) -> Result<BigUint> {
    let l = BigInt::from(seq.prime_at(word.level())?);
    let (alpha, _) = word.exponent_sums();
    Ok(alpha.mod_floor(&l).to_biguint().unwrap())
}

/// Sparse first-level decomposition: child index -> section word one level
/// down. Identity sections are omitted. Single left-to-right scan with a
/// running a-prefix p: a^e only advances p, while b^e appends b^e to the
/// section at child 1-p and a^e to the section at child 2-p (mod l_n).
pub fn sections(word: &Word, seq: &PrimeSequence) -> Result<BTreeMap<BigUint, Word>> {
    let level = word.level();
    let l = seq.prime_at(level)?;
    let mut raw: BTreeMap<BigUint, Vec<Letter>> = BTreeMap::new();
    let mut prefix = BigInt::zero();
    for letter in word.letters() {
        match letter.symbol {
            Symbol::A => prefix += &letter.exponent,
            Symbol::B => {
                let spine_child = one_based_mod(&(BigInt::one() - &prefix), &l);
                let rooted_child = one_based_mod(&(BigInt::from(2) - &prefix), &l);
                raw.entry(spine_child)
                    .or_default()
                    .push(Letter::b(letter.exponent.clone()));
                raw.entry(rooted_child)
                    .or_default()
                    .push(Letter::a(letter.exponent.clone()));
            }
        }
    }
    let mut out = BTreeMap::new();
    for (child, letters) in raw {
        let section = Word::from_letters(level + 1, letters).reduce_mod(seq)?;
        if !section.is_identity() {
            out.insert(child, section);
        }
    }
    Ok(out)
}

/// The section of `word` at a single child, skipping the other children.
pub fn section_at(word: &Word, child: &BigUint, seq: &PrimeSequence) -> Result<Word> {
    let level = word.level();
    let l = seq.prime_at(level)?;
    let mut letters = Vec::new();
    let mut prefix = BigInt::zero();
    for letter in word.letters() {
        match letter.symbol {
            Symbol::A => prefix += &letter.exponent,
            Symbol::B => {
                if one_based_mod(&(BigInt::one() - &prefix), &l) == *child {
                    letters.push(Letter::b(letter.exponent.clone()));
                }
                if one_based_mod(&(BigInt::from(2) - &prefix), &l) == *child {
                    letters.push(Letter::a(letter.exponent.clone()));
                }
            }
        }
    }
    Word::from_letters(level + 1, letters).reduce_mod(seq)
}

/// The section of `word` at an arbitrary vertex of its subtree.
pub fn section_at_vertex(word: &Word, vertex: &VertexPath, seq: &PrimeSequence) -> Result<Word> {
    let mut current = word.clone();
    for coordinate in vertex.coords() {
        if current.is_identity() {
            return Ok(Word::identity(current.level() + 1));
        }
        current = section_at(&current, coordinate, seq)?;
    }
    Ok(current)
}

/// Apply the word to a vertex: the first coordinate shifts by the root
/// exponent, the rest is transformed by the section at the original first
/// coordinate, recursively.
pub fn act(word: &Word, vertex: &VertexPath, seq: &PrimeSequence) -> Result<VertexPath> {
    vertex.validate(seq)?;
    let mut images: Vec<BigUint> = Vec::with_capacity(vertex.level());
    let mut current = word.clone();
    for (depth, coordinate) in vertex.coords().iter().enumerate() {
        if current.is_identity() {
            images.extend_from_slice(&vertex.coords()[depth..]);
            break;
        }
        let l = seq.prime_at(depth)?;
        let shift = root_exponent(&current, seq)?;
        let image = one_based_mod(&(BigInt::from(coordinate.clone()) + BigInt::from(shift)), &l);
        images.push(image);
        current = section_at(&current, coordinate, seq)?;
    }
    Ok(VertexPath::new(images))
}

/// Depth-truncated section tree. Absent children are identity sections;
/// leaves at the cut depth keep their unexpanded residual word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Portrait {
    pub level: usize,
    pub root_exp: BigUint,
    pub children: BTreeMap<BigUint, Portrait>,
    pub residual: Option<Word>,
}

impl Portrait {
    /// All root exponents through the whole expanded tree are zero.
    pub fn all_root_exps_zero(&self) -> bool {
        self.root_exp.is_zero() && self.children.values().all(Portrait::all_root_exps_zero)
    }

    /// Canonical DOT rendering of the tree, one node per expanded section.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph portrait {\n  node [shape=box];\n");
        self.dot_node(&mut out, "r", "root");
        out.push_str("}\n");
        out
    }

    fn dot_node(&self, out: &mut String, id: &str, label: &str) {
        let residual = self
            .residual
            .as_ref()
            .map(|w| format!(" | {}", render_word(w)))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "  {id} [label=\"{label} | a^{}{}\"];",
            self.root_exp, residual
        );
        for (child, sub) in &self.children {
            let child_id = format!("{id}_{child}");
            let _ = writeln!(out, "  {id} -> {child_id};");
            sub.dot_node(out, &child_id, &child.to_string());
        }
    }
}

// Hand-rolled so the children map keys stay in numeric order; string keys
// through a generic JSON map would re-sort lexicographically.
impl Serialize for Portrait {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        struct Children<'a>(&'a BTreeMap<BigUint, Portrait>);
        impl Serialize for Children<'_> {
            fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = ser.serialize_map(Some(self.0.len()))?;
                for (index, portrait) in self.0 {
                    map.serialize_entry(&index.to_string(), portrait)?;
                }
                map.end()
            }
        }
        let fields = 3 + usize::from(self.residual.is_some());
        let mut st = ser.serialize_struct("Portrait", fields)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("rootExp", &self.root_exp.to_string())?;
        st.serialize_field("children", &Children(&self.children))?;
        if let Some(residual) = &self.residual {
            st.serialize_field("residual", &render_word(residual))?;
        }
        st.end()
    }
}

/// Expand sections recursively to the requested depth.
pub fn portrait(word: &Word, depth: usize, seq: &PrimeSequence) -> Result<Portrait> {
    let reduced = word.reduce_mod(seq)?;
    let root_exp = root_exponent(&reduced, seq)?;
    if depth == 0 {
        let residual = (!reduced.is_identity()).then_some(reduced);
        return Ok(Portrait {
            level: word.level(),
            root_exp,
            children: BTreeMap::new(),
            residual,
        });
    }
    let mut children = BTreeMap::new();
    for (child, section) in sections(&reduced, seq)? {
        children.insert(child, portrait(&section, depth - 1, seq)?);
    }
    Ok(Portrait {
        level: word.level(),
        root_exp,
        children,
        residual: None,
    })
}

/// Witness data backing a `Nontrivial` verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum Witness {
    /// The section at `node` permutes its children by a^shift, shift != 0:
    /// the vertex node.1 moves.
    MovedChild {
        node: VertexPath,
        #[serde(serialize_with = "crate::serde_util::biguint_str")]
        shift: BigUint,
    },
    /// The section at `node` has nonzero b-exponent sum, hence a nonzero
    /// image in the infinite cyclic part of the abelianization.
    BExponent {
        node: VertexPath,
        #[serde(serialize_with = "crate::serde_util::bigint_str")]
        sum: BigInt,
    },
}

/// Honest word-problem verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriState {
    Trivial,
    Nontrivial(Witness),
    Unknown { visited: u64 },
}

impl TriState {
    pub fn is_trivial(&self) -> bool {
        matches!(self, TriState::Trivial)
    }

    pub fn is_nontrivial(&self) -> bool {
        matches!(self, TriState::Nontrivial(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, TriState::Unknown { .. })
    }
}

impl Serialize for TriState {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TriState::Trivial => {
                let mut st = ser.serialize_struct("TriState", 1)?;
                st.serialize_field("verdict", "trivial")?;
                st.end()
            }
            TriState::Nontrivial(witness) => {
                let mut st = ser.serialize_struct("TriState", 2)?;
                st.serialize_field("verdict", "nontrivial")?;
                st.serialize_field("witness", witness)?;
                st.end()
            }
            TriState::Unknown { visited } => {
                let mut st = ser.serialize_struct("TriState", 2)?;
                st.serialize_field("verdict", "unknown")?;
                st.serialize_field("visited", visited)?;
                st.end()
            }
        }
    }
}

struct Decider<'a> {
    seq: &'a PrimeSequence,
    budget: u64,
    visited: u64,
}

impl Decider<'_> {
    fn decide(&mut self, word: &Word, node: &VertexPath) -> Result<TriState> {
        if self.visited >= self.budget {
            return Ok(TriState::Unknown {
                visited: self.visited,
            });
        }
        self.visited += 1;

        let word = word.reduce_mod(self.seq)?;
        if word.is_identity() {
            return Ok(TriState::Trivial);
        }
        let shift = root_exponent(&word, self.seq)?;
        if !shift.is_zero() {
            return Ok(TriState::Nontrivial(Witness::MovedChild {
                node: node.clone(),
                shift,
            }));
        }
        // Abelianization shortcut: b has infinite order in G^ab, so a
        // nonzero b-exponent sum decides without recursion.
        let (_, beta) = word.exponent_sums();
        if !beta.is_zero() {
            return Ok(TriState::Nontrivial(Witness::BExponent {
                node: node.clone(),
                sum: beta,
            }));
        }
        let mut unknown = false;
        for (child, section) in sections(&word, self.seq)? {
            match self.decide(&section, &node.child(child))? {
                TriState::Trivial => {}
                TriState::Unknown { .. } => unknown = true,
                nontrivial => return Ok(nontrivial),
            }
        }
        if unknown {
            Ok(TriState::Unknown {
                visited: self.visited,
            })
        } else {
            Ok(TriState::Trivial)
        }
    }
}

/// Budgeted recursive triviality decision. The budget counts recursion
/// nodes visited; exhausting it yields `Unknown`, never a wrong verdict.
pub fn decide_trivial(word: &Word, seq: &PrimeSequence, budget: u64) -> Result<TriState> {
    let mut decider = Decider {
        seq,
        budget: budget.max(1),
        visited: 0,
    };
    decider.decide(word, &VertexPath::root())
}

/// Equality as triviality of u * v^-1.
pub fn decide_equal(u: &Word, v: &Word, seq: &PrimeSequence, budget: u64) -> Result<TriState> {
    decide_trivial(&u.multiply(&v.invert())?, seq, budget)
}

/// Exact membership in the n-th level stabilizer: every root exponent
/// through the expansion to depth n is zero. No budget needed — the
/// expansion is finite and sparse.
pub fn in_level_stabilizer(word: &Word, n: usize, seq: &PrimeSequence) -> Result<bool> {
    if n == 0 {
        return Ok(true);
    }
    let word = word.reduce_mod(seq)?;
    if !root_exponent(&word, seq)?.is_zero() {
        return Ok(false);
    }
    for section in sections(&word, seq)?.values() {
        if !in_level_stabilizer(section, n - 1, seq)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Budgeted rigid-stabilizer membership at `u`: Trivial means the word acts
/// trivially outside the subtree at `u` (up to the budget).
pub fn rigid_support_witness(
    word: &Word,
    u: &VertexPath,
    seq: &PrimeSequence,
    budget: u64,
) -> Result<TriState> {
    let mut decider = Decider {
        seq,
        budget: budget.max(1),
        visited: 0,
    };
    let mut current = word.clone();
    let mut node = VertexPath::root();
    let mut unknown = false;
    for coordinate in u.coords() {
        let current_reduced = current.reduce_mod(seq)?;
        // Any rotation at a vertex on the path to u moves siblings of the
        // path, all of which lie outside the subtree at u.
        let shift = root_exponent(&current_reduced, seq)?;
        if !shift.is_zero() {
            return Ok(TriState::Nontrivial(Witness::MovedChild {
                node: node.clone(),
                shift,
            }));
        }
        for (child, section) in sections(&current_reduced, seq)? {
            if child == *coordinate {
                continue;
            }
            match decider.decide(&section, &node.child(child))? {
                TriState::Trivial => {}
                TriState::Unknown { .. } => unknown = true,
                nontrivial => return Ok(nontrivial),
            }
        }
        current = section_at(&current_reduced, coordinate, seq)?;
        node = node.child(coordinate.clone());
    }
    if unknown {
        Ok(TriState::Unknown {
            visited: decider.visited,
        })
    } else {
        Ok(TriState::Trivial)
    }
}
