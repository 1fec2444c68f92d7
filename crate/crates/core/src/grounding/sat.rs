//! Propositional satisfiability by unit propagation and chronological
//! splitting, with two watched literals per clause.

use std::collections::BTreeMap;

use crate::clause::{Clause, Literal};
use crate::error::{Error, Result};

/// Dense indices for the ground atoms of one query.
#[derive(Clone, Debug, Default)]
pub struct GroundAtomAlphabet {
    index: BTreeMap<Literal, usize>,
    atoms: Vec<Literal>,
}

impl GroundAtomAlphabet {
    /// Index of the atom of `l`, allocating one on first sight.
    pub fn intern(&mut self, l: &Literal) -> usize {
        let a = l.atom();
        if let Some(&i) = self.index.get(&a) {
            return i;
        }
        let i = self.atoms.len();
        self.index.insert(a.clone(), i);
        self.atoms.push(a);
        i
    }

    pub fn get(&self, l: &Literal) -> Option<usize> {
        self.index.get(&l.atom()).copied()
    }

    pub fn atom(&self, i: usize) -> &Literal {
        &self.atoms[i]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Encodes a literal as `2·atom + negated`.
    pub fn encode(&mut self, l: &Literal) -> u32 {
        (self.intern(l) as u32) << 1 | u32::from(!l.is_positive())
    }
}

/// A clause set over atoms `0..num_atoms`, literals encoded as `2·atom + negated`.
#[derive(Clone, Debug, Default)]
pub struct Cnf {
    pub num_atoms: usize,
    pub clauses: Vec<Vec<u32>>,
}

const UNSET: u8 = 2;

fn value(assign: &[u8], lit: u32) -> u8 {
    match assign[(lit >> 1) as usize] {
        UNSET => UNSET,
        v => v ^ (lit & 1) as u8,
    }
}

struct Solver {
    clauses: Vec<Vec<u32>>,
    watches: Vec<Vec<usize>>,
    assign: Vec<u8>,
    trail: Vec<u32>,
    qhead: usize,
    // trail length at each decision, and whether its second branch is running
    levels: Vec<(usize, u32, bool)>,
}

impl Solver {
    fn enqueue(&mut self, lit: u32) -> bool {
        match value(&self.assign, lit) {
            1 => true,
            0 => false,
            _ => {
                self.assign[(lit >> 1) as usize] = 1 ^ (lit & 1) as u8;
                self.trail.push(lit);
                true
            }
        }
    }

    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let falsified = self.trail[self.qhead] ^ 1;
            self.qhead += 1;
            let mut ws = std::mem::take(&mut self.watches[falsified as usize]);
            let mut i = 0;
            let mut ok = true;
            while i < ws.len() {
                let ci = ws[i];
                let c = &mut self.clauses[ci];
                if c[0] == falsified {
                    c.swap(0, 1);
                }
                if value(&self.assign, c[0]) == 1 {
                    i += 1;
                    continue;
                }
                if let Some(k) = (2..c.len()).find(|&k| value(&self.assign, c[k]) != 0) {
                    c.swap(1, k);
                    let w = c[1];
                    self.watches[w as usize].push(ci);
                    ws.swap_remove(i);
                    continue;
                }
                let first = c[0];
                i += 1;
                if !self.enqueue(first) {
                    ok = false;
                    break;
                }
            }
            self.watches[falsified as usize].extend(ws);
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let l = self.trail.pop().unwrap();
            self.assign[(l >> 1) as usize] = UNSET;
        }
        self.qhead = len;
    }

    fn solve(&mut self) -> bool {
        loop {
            if self.propagate() {
                match (0..self.assign.len()).find(|&v| self.assign[v] == UNSET) {
                    None => return true,
                    Some(v) => {
                        let lit = (v as u32) << 1;
                        self.levels.push((self.trail.len(), lit, false));
                        self.enqueue(lit);
                    }
                }
            } else {
                loop {
                    let Some((len, lit, flipped)) = self.levels.pop() else {
                        return false;
                    };
                    self.undo_to(len);
                    if !flipped {
                        self.levels.push((len, lit ^ 1, true));
                        self.enqueue(lit ^ 1);
                        break;
                    }
                }
            }
        }
    }
}

/// True iff the clause set has a model.
pub fn satisfiable(cnf: &Cnf) -> bool {
    let mut s = Solver {
        clauses: Vec::new(),
        watches: vec![Vec::new(); cnf.num_atoms * 2],
        assign: vec![UNSET; cnf.num_atoms],
        trail: Vec::new(),
        qhead: 0,
        levels: Vec::new(),
    };
    let mut units = Vec::new();
    for c in &cnf.clauses {
        let mut c = c.clone();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            continue;
        }
        match c.len() {
            0 => return false,
            1 => units.push(c[0]),
            _ => {
                let ci = s.clauses.len();
                s.watches[c[0] as usize].push(ci);
                s.watches[c[1] as usize].push(ci);
                s.clauses.push(c);
            }
        }
    }
    for u in units {
        if !s.enqueue(u) {
            return false;
        }
    }
    s.solve()
}

/// Whether `premises` entail `goal`, decided as unsatisfiability of the
/// premises together with the complement of `goal`.
pub fn ground_entails(premises: &[Clause], goal: &Clause) -> Result<bool> {
    if let Some(c) = premises.iter().chain([goal]).find(|c| !c.is_ground()) {
        return Err(Error::NotGround(c.to_string()));
    }
    let mut alpha = GroundAtomAlphabet::default();
    let mut cnf = Cnf::default();
    for c in premises {
        cnf.clauses.push(c.iter().map(|l| alpha.encode(l)).collect());
    }
    for l in goal {
        cnf.clauses.push(vec![alpha.encode(&l.complement())]);
    }
    cnf.num_atoms = alpha.len();
    Ok(!satisfiable(&cnf))
}
