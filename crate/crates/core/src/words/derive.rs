//! Bounded equational saturation over a presentation.
//!
//! Equalities between word sums are derived from the relations with the
//! moves available in any quotient: substituting a word by something it is
//! known to equal, multiplying both sides by a generator, reversing both
//! sides (every generator is self-dual), cancelling a common generator on
//! the left or right (Fibonacci cancellation and its mirror), and cancelling
//! common summands (semisimplicity). The search is given-clause style:
//! the lightest unprocessed equality is combined with everything processed
//! before it. Each new equality is also rewritten to a canonical form with
//! the word-to-word equalities known so far, oriented towards the smaller
//! word in length-then-lexicographic order.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::cmp::Reverse;
use core::fmt;

use super::{Presentation, Word, WordSum};

/// Search limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeriveBudget {
    /// Distinct equalities kept before giving up.
    pub max_equalities: usize,
    /// Longest word allowed in a kept equality; `None` means `2n + 4` for
    /// the longest relation side `n`.
    pub max_word_len: Option<usize>,
    /// Most words (with multiplicity) on either side of a kept equality.
    pub max_terms: u64,
    /// Treat the shift non-isomorphisms as contradictions when all three
    /// braid relations on three generators are present.
    pub shift_oracle: bool,
}

impl Default for DeriveBudget {
    fn default() -> Self {
        DeriveBudget {
            max_equalities: 50_000,
            max_word_len: None,
            max_terms: 6,
            shift_oracle: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// A relation of the presentation.
    Relation,
    /// A subword replaced using another equality.
    Substitute,
    /// Adjacent repeats expanded with `x x = 1 + x`.
    Expand,
    /// A generator common to the left end of every word removed.
    CancelLeft,
    /// A generator common to the right end of every word removed.
    CancelRight,
    /// Both sides read backwards.
    Reverse,
    MultiplyLeft,
    MultiplyRight,
    /// A summand common to both sides removed.
    SumCancel,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Relation => "relation",
            Rule::Substitute => "substitute",
            Rule::Expand => "expand",
            Rule::CancelLeft => "cancel-left",
            Rule::CancelRight => "cancel-right",
            Rule::Reverse => "reverse",
            Rule::MultiplyLeft => "multiply-left",
            Rule::MultiplyRight => "multiply-right",
            Rule::SumCancel => "sum-cancel",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One derivation step; `premises` index earlier steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub premises: Vec<usize>,
    pub lhs: WordSum,
    pub rhs: WordSum,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    /// Two distinct generators are isomorphic.
    Collapse { a: u8, b: u8 },
    /// A cyclic word is isomorphic to its shift, which the braid relations forbid.
    Shift { word: Word, shifted: Word },
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::Collapse { a, b } => {
                write!(f, "{} = {}", Word::letter(*a), Word::letter(*b))
            }
            Conclusion::Shift { word, shifted } => write!(f, "{word} = {shifted} (forbidden shift)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<Step>,
    pub conclusion: Conclusion,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Distinct equalities kept.
    pub equalities: usize,
    /// Equalities combined with the processed set.
    pub processed: usize,
    /// Candidates dropped as trivial, duplicate or over the size limits.
    pub discarded: usize,
    /// Whether the search stopped at `max_equalities` rather than running dry.
    pub budget_hit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeriveOutcome {
    Derived { derivation: Derivation, stats: SearchStats },
    Exhausted { stats: SearchStats },
}

impl DeriveOutcome {
    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            DeriveOutcome::Derived { derivation, .. } => Some(derivation),
            DeriveOutcome::Exhausted { .. } => None,
        }
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            DeriveOutcome::Derived { stats, .. } | DeriveOutcome::Exhausted { stats } => *stats,
        }
    }
}

/// Searches for a derivation of `x = y` for distinct generators.
///
/// Running out of budget, or of new equalities, is reported as
/// [`DeriveOutcome::Exhausted`]; it does not show that the presentation is
/// consistent.
pub fn derive_collapse(p: &Presentation, budget: &DeriveBudget) -> DeriveOutcome {
    let mut engine = Engine::new(p, budget);
    engine.run()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ref {
    Node(usize),
    Prev,
}

#[derive(Clone, Debug)]
struct ChainStep {
    rule: Rule,
    premises: Vec<Ref>,
    lhs: WordSum,
    rhs: WordSum,
    note: Note,
}

/// Step annotations, rendered only for steps that end up in a derivation.
#[derive(Clone, Debug)]
enum Note {
    Relation(usize),
    Reverse,
    MultiplyLeft(u8),
    MultiplyRight(u8),
    Replace { from: Word, to: WordSum, pos: usize, word: Word },
    Expand,
    Canonical,
    SumCancel(Vec<Word>),
    CancelLeft(u8),
    CancelRight(u8),
}

impl Note {
    fn render(&self) -> String {
        match self {
            Note::Relation(i) => format!("relation {i}"),
            Note::Reverse => String::from("read both sides backwards"),
            Note::MultiplyLeft(x) => format!("multiply on the left by {}", Word::letter(*x)),
            Note::MultiplyRight(x) => format!("multiply on the right by {}", Word::letter(*x)),
            Note::Replace { from, to, pos, word } => format!("replace {from} by {to} at position {pos} of {word}"),
            Note::Expand => String::from("expand adjacent repeats"),
            Note::Canonical => String::from("rewrite every word to its canonical form"),
            Note::SumCancel(ws) => {
                let shown: Vec<String> = ws.iter().map(|w| format!("{w}")).collect();
                format!("cancel common summands {}", shown.join(", "))
            }
            Note::CancelLeft(x) => format!("cancel {} on the left", Word::letter(*x)),
            Note::CancelRight(x) => format!("cancel {} on the right", Word::letter(*x)),
        }
    }
}

struct Node {
    lhs: WordSum,
    rhs: WordSum,
    chain: Vec<ChainStep>,
}

type Key = (WordSum, WordSum);

/// Equalities kept per word for substituting into later ones; further
/// equalities with the same word side are consequences of the kept ones
/// once those are substituted into them.
const SUBSTITUTIONS_PER_WORD: usize = 3;

fn key(l: &WordSum, r: &WordSum) -> Key {
    if l <= r {
        (l.clone(), r.clone())
    } else {
        (r.clone(), l.clone())
    }
}

struct Engine<'a> {
    p: &'a Presentation,
    budget: &'a DeriveBudget,
    max_len: usize,
    nodes: Vec<Node>,
    seen: BTreeMap<Key, usize>,
    queue: BinaryHeap<Reverse<(usize, usize)>>,
    /// Processed equalities.
    active: Vec<usize>,
    /// Processed equalities with a single-word side, by that word.
    by_side: BTreeMap<Word, Vec<(usize, bool)>>,
    /// Oriented word rewrites `big -> (small, node)` used for canonical forms.
    rewrites: BTreeMap<Vec<u8>, (Word, usize)>,
    /// Canonical forms under the current rewrites.
    canon_cache: RefCell<BTreeMap<Word, (WordSum, Vec<usize>)>>,
    shift_oracle: bool,
    stats: SearchStats,
    found: Option<(usize, Conclusion)>,
}

impl<'a> Engine<'a> {
    fn new(p: &'a Presentation, budget: &'a DeriveBudget) -> Self {
        let max_len = budget.max_word_len.unwrap_or(2 * p.max_relation_len() + 4);
        let shift_oracle = budget.shift_oracle
            && p.generators == 3
            && p.has_braid(0, 1)
            && p.has_braid(1, 2)
            && p.has_braid(0, 2);
        Engine {
            p,
            budget,
            max_len,
            nodes: Vec::new(),
            seen: BTreeMap::new(),
            queue: BinaryHeap::new(),
            active: Vec::new(),
            by_side: BTreeMap::new(),
            rewrites: BTreeMap::new(),
            canon_cache: RefCell::new(BTreeMap::new()),
            shift_oracle,
            stats: SearchStats::default(),
            found: None,
        }
    }

    fn run(&mut self) -> DeriveOutcome {
        for (i, (u, v)) in self.p.relations.iter().enumerate() {
            let step = ChainStep {
                rule: Rule::Relation,
                premises: Vec::new(),
                lhs: WordSum::word(u.clone()),
                rhs: WordSum::word(v.clone()),
                note: Note::Relation(i),
            };
            self.submit(vec![step]);
            if self.found.is_some() {
                break;
            }
        }
        while self.found.is_none() {
            if self.nodes.len() >= self.budget.max_equalities {
                self.stats.budget_hit = true;
                break;
            }
            let Some(Reverse((_, id))) = self.queue.pop() else { break };
            self.process(id);
        }
        self.stats.equalities = self.nodes.len();
        match self.found.take() {
            Some((id, conclusion)) => DeriveOutcome::Derived {
                derivation: self.extract(id, conclusion),
                stats: self.stats,
            },
            None => DeriveOutcome::Exhausted { stats: self.stats },
        }
    }

    fn process(&mut self, g: usize) {
        self.stats.processed += 1;
        let (l, r) = (self.nodes[g].lhs.clone(), self.nodes[g].rhs.clone());

        // reverse
        self.submit(vec![ChainStep {
            rule: Rule::Reverse,
            premises: vec![Ref::Node(g)],
            lhs: l.reversed(),
            rhs: r.reversed(),
            note: Note::Reverse,
        }]);

        // multiply by each generator on either side
        for x in 0..self.p.generators as u8 {
            if self.found.is_some() {
                return;
            }
            let xw = Word::letter(x);
            let left = |s: &WordSum| s.map_words(|w| xw.concat(w));
            let right = |s: &WordSum| s.map_words(|w| w.concat(&xw));
            self.submit(vec![ChainStep {
                rule: Rule::MultiplyLeft,
                premises: vec![Ref::Node(g)],
                lhs: left(&l),
                rhs: left(&r),
                note: Note::MultiplyLeft(x),
            }]);
            self.submit(vec![ChainStep {
                rule: Rule::MultiplyRight,
                premises: vec![Ref::Node(g)],
                lhs: right(&l),
                rhs: right(&r),
                note: Note::MultiplyRight(x),
            }]);
        }

        // substitute processed equalities into g
        let mut uses: Vec<(usize, bool, Word)> = Vec::new();
        for w in l.terms().chain(r.terms()).map(|(w, _)| w) {
            for i in 0..w.len() {
                for j in i + 1..=w.len() {
                    if let Some(list) = self.by_side.get(&w.slice(i, j)) {
                        for &(e, side) in list {
                            uses.push((e, side, w.slice(i, j)));
                        }
                    }
                }
            }
        }
        uses.sort();
        uses.dedup();
        for (e, side, _) in uses {
            if self.found.is_some() {
                return;
            }
            self.substitute_into(g, e, side);
        }

        // activate g and substitute it into everything processed before
        self.active.push(g);
        for side in [false, true] {
            let (s, t) = self.sides(g, side);
            if let Some(u) = s.as_word().filter(|u| reduces(u, t)).cloned() {
                let list = self.by_side.entry(u).or_default();
                if list.len() < SUBSTITUTIONS_PER_WORD {
                    list.push((g, side));
                }
            }
        }
        if let (Some(u), Some(v)) = (l.as_word(), r.as_word()) {
            let (big, small) = if u > v { (u, v) } else { (v, u) };
            if !self.rewrites.contains_key(big.letters()) {
                self.rewrites.insert(big.letters().to_vec(), (small.clone(), g));
                self.canon_cache.borrow_mut().clear();
            }
        }
        if l.as_word().is_none() || r.as_word().is_none() {
            return;
        }
        let targets: Vec<usize> = self.active[..self.active.len() - 1].to_vec();
        for side in [false, true] {
            let (s, _) = self.sides(g, side);
            let Some(u) = s.as_word().cloned() else { continue };
            for &a in &targets {
                if self.found.is_some() {
                    return;
                }
                let node = &self.nodes[a];
                let hit = node.lhs.terms().chain(node.rhs.terms()).any(|(w, _)| w.occurrences(&u).next().is_some());
                if hit {
                    self.substitute_into(a, g, side);
                }
            }
        }
    }

    fn sides(&self, id: usize, side: bool) -> (&WordSum, &WordSum) {
        let n = &self.nodes[id];
        if side {
            (&n.rhs, &n.lhs)
        } else {
            (&n.lhs, &n.rhs)
        }
    }

    /// Every single replacement of the word on `side` of `e` inside `target`.
    fn substitute_into(&mut self, target: usize, e: usize, side: bool) {
        let (from, to) = self.sides(e, side);
        let Some(u) = from.as_word().cloned() else { return };
        let to = to.clone();
        let (l, r) = (self.nodes[target].lhs.clone(), self.nodes[target].rhs.clone());
        for (on_right, s) in [(false, &l), (true, &r)] {
            for (w, _) in s.terms() {
                for pos in w.occurrences(&u).collect::<Vec<_>>() {
                    if self.found.is_some() {
                        return;
                    }
                    let mut replaced = s.clone();
                    replaced.remove_word(w, 1);
                    for (t, m) in to.terms() {
                        replaced.add_word(w.splice(pos, pos + u.len(), t.letters()), m);
                    }
                    let (nl, nr) = if on_right { (l.clone(), replaced) } else { (replaced, r.clone()) };
                    self.submit(vec![ChainStep {
                        rule: Rule::Substitute,
                        premises: vec![Ref::Node(target), Ref::Node(e)],
                        lhs: nl,
                        rhs: nr,
                        note: Note::Replace {
                            from: u.clone(),
                            to: to.clone(),
                            pos,
                            word: w.clone(),
                        },
                    }]);
                }
            }
        }
    }

    /// Simplifies a candidate, keeps it and its canonical form if new.
    fn submit(&mut self, mut chain: Vec<ChainStep>) {
        let last = chain.last().expect("nonempty chain");
        // expanding and cancelling never lengthens a word
        if last.lhs.max_len().max(last.rhs.max_len()) > self.max_len + 1 {
            self.stats.discarded += 1;
            return;
        }
        let expanded = !last.lhs.is_reduced() || !last.rhs.is_reduced();
        let (l, r) = if expanded {
            (last.lhs.normalized(), last.rhs.normalized())
        } else {
            (last.lhs.clone(), last.rhs.clone())
        };
        // cheap pass first: most candidates are trivial or already known
        let (fl, fr) = simplify(l.clone(), r.clone(), None);
        if fl == fr
            || fl.is_zero()
            || fr.is_zero()
            || fl.max_len().max(fr.max_len()) > self.max_len
            || fl.count().max(fr.count()) > self.budget.max_terms
            || self.seen.contains_key(&key(&fl, &fr))
        {
            self.stats.discarded += 1;
            return;
        }
        if expanded {
            chain.push(ChainStep {
                rule: Rule::Expand,
                premises: vec![Ref::Prev],
                lhs: l.clone(),
                rhs: r.clone(),
                note: Note::Expand,
            });
        }
        simplify(l, r, Some(&mut chain));
        let (raw_id, fresh) = self.keep(&chain);
        if self.found.is_some() || (raw_id.is_some() && !fresh) {
            return;
        }

        let last = chain.last().expect("nonempty chain");
        let (cl, used_l) = self.canonical(&last.lhs);
        let (cr, used_r) = self.canonical(&last.rhs);
        if used_l.is_empty() && used_r.is_empty() {
            return;
        }
        let mut premises = match raw_id {
            Some(id) => {
                chain.clear();
                vec![Ref::Node(id)]
            }
            None => vec![Ref::Prev],
        };
        let mut used: Vec<usize> = used_l.into_iter().chain(used_r).collect();
        used.sort_unstable();
        used.dedup();
        premises.extend(used.iter().map(|&u| Ref::Node(u)));
        chain.push(ChainStep {
            rule: Rule::Substitute,
            premises,
            lhs: cl.clone(),
            rhs: cr.clone(),
            note: Note::Canonical,
        });
        let (l, r) = (cl.clone(), cr.clone());
        simplify(l, r, Some(&mut chain));
        self.keep(&chain);
    }

    /// Records the chain's final equality unless it is trivial, oversized or
    /// known; returns the id of the equal node, new or old, and whether it is new.
    fn keep(&mut self, chain: &[ChainStep]) -> (Option<usize>, bool) {
        let last = chain.last().expect("nonempty chain");
        let (l, r) = (&last.lhs, &last.rhs);
        if l == r || l.is_zero() || r.is_zero() {
            self.stats.discarded += 1;
            return (None, false);
        }
        let k = key(l, r);
        if let Some(&id) = self.seen.get(&k) {
            self.stats.discarded += 1;
            return (Some(id), false);
        }
        if l.max_len().max(r.max_len()) > self.max_len || l.count().max(r.count()) > self.budget.max_terms {
            self.stats.discarded += 1;
            return (None, false);
        }
        let id = self.nodes.len();
        let weight = l.weight() + r.weight();
        let conclusion = self.conclusion(l, r);
        self.nodes.push(Node {
            lhs: l.clone(),
            rhs: r.clone(),
            chain: chain.to_vec(),
        });
        self.seen.insert(k, id);
        self.queue.push(Reverse((weight, id)));
        if let Some(c) = conclusion {
            self.found = Some((id, c));
        }
        (Some(id), true)
    }

    fn conclusion(&self, l: &WordSum, r: &WordSum) -> Option<Conclusion> {
        let (u, v) = (l.as_word()?, r.as_word()?);
        if u.len() == 1 && v.len() == 1 && u != v {
            let (a, b) = (u.letters()[0].min(v.letters()[0]), u.letters()[0].max(v.letters()[0]));
            return Some(Conclusion::Collapse { a, b });
        }
        if self.shift_oracle {
            for (x, y) in [(u, v), (v, u)] {
                if is_forbidden_shift(x, y) {
                    return Some(Conclusion::Shift {
                        word: x.clone(),
                        shifted: y.clone(),
                    });
                }
            }
        }
        None
    }

    /// Rewrites with the oriented word equalities until none applies.
    fn canonical(&self, s: &WordSum) -> (WordSum, Vec<usize>) {
        let mut used = Vec::new();
        let mut out = WordSum::zero();
        for (w, m) in s.terms() {
            let (c, u) = self.canonical_word(w);
            for (v, k) in c.terms() {
                out.add_word(v.clone(), k * m);
            }
            used.extend_from_slice(&u);
        }
        (out, used)
    }

    fn canonical_word(&self, w: &Word) -> (WordSum, Vec<usize>) {
        if self.rewrites.is_empty() {
            return (WordSum::word(w.clone()), Vec::new());
        }
        if let Some(hit) = self.canon_cache.borrow().get(w) {
            return hit.clone();
        }
        let mut used = Vec::new();
        let mut out = WordSum::zero();
        let mut stack: Vec<(Word, u64)> = vec![(w.clone(), 1)];
        while let Some((v, m)) = stack.pop() {
            match self.first_rewrite(&v) {
                None => out.add_word(v, m),
                Some((i, j, small, id)) => {
                    used.push(id);
                    let replaced = v.splice(i, j, small.letters());
                    for (x, k) in super::normalize(&replaced).terms() {
                        stack.push((x.clone(), k * m));
                    }
                }
            }
        }
        used.sort_unstable();
        used.dedup();
        self.canon_cache.borrow_mut().insert(w.clone(), (out.clone(), used.clone()));
        (out, used)
    }

    fn first_rewrite(&self, w: &Word) -> Option<(usize, usize, &Word, usize)> {
        let letters = w.letters();
        for i in 0..letters.len() {
            for j in i + 1..=letters.len() {
                if let Some((small, id)) = self.rewrites.get(&letters[i..j]) {
                    return Some((i, j, small, *id));
                }
            }
        }
        None
    }

    fn extract(&self, last: usize, conclusion: Conclusion) -> Derivation {
        let mut needed = BTreeSet::new();
        let mut stack = vec![last];
        while let Some(id) = stack.pop() {
            if !needed.insert(id) {
                continue;
            }
            for step in &self.nodes[id].chain {
                for p in &step.premises {
                    if let Ref::Node(n) = p {
                        stack.push(*n);
                    }
                }
            }
        }
        let mut index_of_node = BTreeMap::new();
        let mut steps: Vec<Step> = Vec::new();
        for id in needed {
            for cs in &self.nodes[id].chain {
                let premises = cs
                    .premises
                    .iter()
                    .map(|p| match p {
                        Ref::Node(n) => index_of_node[n],
                        Ref::Prev => steps.len() - 1,
                    })
                    .collect();
                steps.push(Step {
                    rule: cs.rule,
                    premises,
                    lhs: cs.lhs.clone(),
                    rhs: cs.rhs.clone(),
                    note: cs.note.render(),
                });
            }
            index_of_node.insert(id, steps.len() - 1);
        }
        Derivation { steps, conclusion }
    }
}

/// Whether replacing `u` by `t` is a simplification: every word of `t` is
/// shorter, or `t` is a single smaller word.
fn reduces(u: &Word, t: &WordSum) -> bool {
    match t.as_word() {
        Some(v) => v < u,
        None => t.max_len() < u.len(),
    }
}

/// Sum cancellation, then left and right generator cancellation while possible.
fn simplify(mut l: WordSum, mut r: WordSum, mut steps: Option<&mut Vec<ChainStep>>) -> (WordSum, WordSum) {
    let mut record = |rule: Rule, l: &WordSum, r: &WordSum, note: Note| {
        if let Some(steps) = steps.as_deref_mut() {
            steps.push(ChainStep {
                rule,
                premises: vec![Ref::Prev],
                lhs: l.clone(),
                rhs: r.clone(),
                note,
            });
        }
    };
    let mut common = Vec::new();
    for (w, m) in l.terms() {
        let k = m.min(r.multiplicity(w));
        if k > 0 {
            common.push((w.clone(), k));
        }
    }
    if !common.is_empty() {
        for (w, k) in &common {
            l.remove_word(w, *k);
            r.remove_word(w, *k);
        }
        record(Rule::SumCancel, &l, &r, Note::SumCancel(common.into_iter().map(|(w, _)| w).collect()));
    }
    loop {
        if let Some(x) = common_end(&l, &r, true) {
            l = l.map_words(|w| w.slice(1, w.len()));
            r = r.map_words(|w| w.slice(1, w.len()));
            record(Rule::CancelLeft, &l, &r, Note::CancelLeft(x));
        } else if let Some(x) = common_end(&l, &r, false) {
            l = l.map_words(|w| w.slice(0, w.len() - 1));
            r = r.map_words(|w| w.slice(0, w.len() - 1));
            record(Rule::CancelRight, &l, &r, Note::CancelRight(x));
        } else {
            break;
        }
    }
    (l, r)
}

/// The generator every word on both sides starts (or ends) with, if any.
fn common_end(l: &WordSum, r: &WordSum, left: bool) -> Option<u8> {
    let mut letter = None;
    for (w, _) in l.terms().chain(r.terms()) {
        let x = if left { w.first() } else { w.last() }?;
        match letter {
            None => letter = Some(x),
            Some(y) if y != x => return None,
            _ => {}
        }
    }
    if l.is_zero() || r.is_zero() {
        return None;
    }
    letter
}

/// `w = q w'` where `w` cycles through some ordering `p, q, r` of the three
/// generators and `w'` is `w` without its last letter.
fn is_forbidden_shift(w: &Word, shifted: &Word) -> bool {
    let n = w.len();
    if n < 2 || shifted.len() != n {
        return false;
    }
    let letters = w.letters();
    let (p, q) = (letters[0], letters[1]);
    if p == q || p > 2 || q > 2 {
        return false;
    }
    let r = 3 - p - q;
    let order = [p, q, r];
    let expected = |len: usize| -> Vec<u8> { (0..len).map(|i| order[i % 3]).collect() };
    if letters != expected(n).as_slice() {
        return false;
    }
    let mut s = vec![q];
    s.extend(expected(n - 1));
    shifted.letters() == s.as_slice()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(n: usize, rels: &[(&str, &str)]) -> Presentation {
        Presentation::parse(n, rels).unwrap()
    }

    fn collapse(p: &Presentation) -> Option<Conclusion> {
        derive_collapse(p, &DeriveBudget::default()).derivation().map(|d| d.conclusion.clone())
    }

    #[test]
    fn commuting_braid_collapses() {
        let p = pres(2, &[("ab", "ba"), ("aba", "bab")]);
        assert_eq!(collapse(&p), Some(Conclusion::Collapse { a: 0, b: 1 }));
    }

    #[test]
    fn braid_alone_exhausts() {
        let budget = DeriveBudget {
            max_equalities: 2000,
            ..DeriveBudget::default()
        };
        let p = pres(2, &[("aba", "bab")]);
        let out = derive_collapse(&p, &budget);
        assert!(out.derivation().is_none(), "{out:?}");
        assert!(out.stats().budget_hit);
    }

    #[test]
    fn shift_patterns() {
        let w = |s: &str| Word::parse(s, 3).unwrap();
        assert!(is_forbidden_shift(&w("ab"), &w("ba")));
        assert!(is_forbidden_shift(&w("abc"), &w("bab")));
        assert!(is_forbidden_shift(&w("cbacb"), &w("bcbac")));
        assert!(!is_forbidden_shift(&w("abc"), &w("bca")));
        assert!(!is_forbidden_shift(&w("aba"), &w("bab")));
    }

    #[test]
    fn premises_precede_conclusions() {
        let p = pres(2, &[("ab", "ba"), ("aba", "bab")]);
        let d = derive_collapse(&p, &DeriveBudget::default());
        let d = d.derivation().unwrap();
        for (i, s) in d.steps.iter().enumerate() {
            assert!(s.premises.iter().all(|&q| q < i));
            assert_eq!(s.premises.is_empty(), s.rule == Rule::Relation);
        }
        let last = d.steps.last().unwrap();
        assert_eq!(last.lhs.count() + last.rhs.count(), 2);
    }
}
