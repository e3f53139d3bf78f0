//! Finite safety games and strategy extraction.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::transducer::{SequentialTransducer, Transducer};
use crate::words::ENDMARKER;

/// The player who picks the next edge at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Owner {
    Input,
    Output,
}

/// An edge with an optional word annotation. Input moves carry the letter
/// read (the endmarker for the end of input); Output moves carry the output.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameEdge {
    pub target: usize,
    pub word: Vec<char>,
}

/// A two-player game where Output must avoid the bad vertices forever.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SafetyGame {
    pub owner: Vec<Owner>,
    pub edges: Vec<Vec<GameEdge>>,
    pub bad: Vec<bool>,
    pub labels: Vec<String>,
    pub initial: usize,
}

impl SafetyGame {
    pub fn new() -> Self {
        SafetyGame::default()
    }

    pub fn add_vertex(&mut self, owner: Owner, label: impl Into<String>, bad: bool) -> usize {
        self.owner.push(owner);
        self.edges.push(Vec::new());
        self.bad.push(bad);
        self.labels.push(label.into());
        self.owner.len() - 1
    }

    pub fn add_edge(&mut self, src: usize, target: usize, word: Vec<char>) {
        self.edges[src].push(GameEdge { target, word });
    }

    pub fn num_vertices(&self) -> usize {
        self.owner.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.iter().map(|e| e.len()).sum()
    }

    /// Graphviz rendering: Input vertices are boxes, Output vertices ellipses,
    /// bad vertices are filled.
    pub fn to_dot(&self, name: &str, solution: Option<&Solution>) -> String {
        let esc = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", esc(name));
        for v in 0..self.num_vertices() {
            let shape = match self.owner[v] {
                Owner::Input => "box",
                Owner::Output => "ellipse",
            };
            let mut attrs = format!("shape={shape}, label=\"{}\"", esc(&self.labels[v]));
            if self.bad[v] {
                attrs.push_str(", style=filled, fillcolor=lightcoral");
            } else if solution.is_some_and(|sol| sol.winning[v]) {
                attrs.push_str(", style=filled, fillcolor=palegreen");
            }
            let _ = writeln!(s, "  v{v} [{attrs}];");
        }
        let _ = writeln!(s, "  start [shape=point];\n  start -> v{};", self.initial);
        for (v, out) in self.edges.iter().enumerate() {
            for (i, e) in out.iter().enumerate() {
                let label: String = if e.word.is_empty() { "ε".into() } else { e.word.iter().collect() };
                let bold = solution.is_some_and(|sol| sol.strategy[v] == Some(i));
                let style = if bold { ", style=bold" } else { "" };
                let _ = writeln!(s, "  v{v} -> v{} [label=\"{}\"{style}];", e.target, esc(&label));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Winning region of Output and a positional strategy on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub winning: Vec<bool>,
    /// Index of the chosen edge at each winning Output vertex.
    pub strategy: Vec<Option<usize>>,
}

impl Solution {
    pub fn initial_winning(&self, g: &SafetyGame) -> bool {
        self.winning[g.initial]
    }
}

/// Solves the game by computing Input's attractor to the bad set.
///
/// An Output vertex without edges is lost; an Input vertex without edges is
/// safe unless bad. The strategy picks the first edge into the winning region.
pub fn solve_safety(g: &SafetyGame) -> Solution {
    let n = g.num_vertices();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, out) in g.edges.iter().enumerate() {
        for e in out {
            pred[e.target].push(v);
        }
    }
    let mut remaining: Vec<usize> = g.edges.iter().map(|e| e.len()).collect();
    let mut attr = vec![false; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if g.bad[v] || (g.owner[v] == Owner::Output && g.edges[v].is_empty()) {
            attr[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &p in &pred[v] {
            if attr[p] {
                continue;
            }
            let hit = match g.owner[p] {
                Owner::Input => true,
                Owner::Output => {
                    remaining[p] -= 1;
                    remaining[p] == 0
                }
            };
            if hit {
                attr[p] = true;
                queue.push_back(p);
            }
        }
    }
    let winning: Vec<bool> = attr.iter().map(|a| !a).collect();
    let strategy = (0..n)
        .map(|v| {
            if g.owner[v] == Owner::Output && winning[v] {
                g.edges[v].iter().position(|e| winning[e.target])
            } else {
                None
            }
        })
        .collect();
    Solution { winning, strategy }
}

/// Follows the strategy from `v` through Output vertices, collecting the
/// annotations, until an Input vertex is reached.
fn follow(g: &SafetyGame, sol: &Solution, mut v: usize, acc: &mut Vec<char>) -> Result<usize> {
    let mut steps = 0;
    while g.owner[v] == Owner::Output {
        let i = sol.strategy[v].ok_or_else(|| Error::SelfCheck(format!("no strategy at vertex {}", g.labels[v])))?;
        let e = &g.edges[v][i];
        acc.extend(e.word.iter().filter(|&&c| c != ENDMARKER));
        v = e.target;
        steps += 1;
        if steps > g.num_vertices() {
            return Err(Error::SelfCheck("strategy loops through Output vertices".into()));
        }
    }
    Ok(v)
}

/// A vertex label usable as a state name in the text format.
fn state_name(label: &str) -> String {
    label.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Reads a sequential transducer off a winning strategy.
///
/// States are the Input vertices reachable under the strategy. An Input move
/// on a letter becomes a transition whose output is the chain of Output
/// annotations up to the next Input vertex. An endmarker move yields the final
/// output: the chain plus `completion` of the Input vertex it ends in (no
/// final output if `completion` returns `None`). Input edges with an empty
/// annotation are ignored.
pub fn extract_sequential(
    g: &SafetyGame,
    sol: &Solution,
    alphabet: &[char],
    completion: impl Fn(usize) -> Option<Vec<char>>,
) -> Result<SequentialTransducer> {
    if !sol.winning[g.initial] {
        return Err(Error::NotUniformizable);
    }
    let mut t = Transducer::new(alphabet.iter().copied());
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let start = follow(g, sol, g.initial, &mut Vec::new())?;
    let mut prefix = Vec::new();
    follow(g, sol, g.initial, &mut prefix)?;
    if !prefix.is_empty() {
        return Err(Error::SelfCheck("output before the first input move".into()));
    }
    ids.insert(start, t.add_fresh_state(&state_name(&g.labels[start])));
    queue.push_back(start);
    t.set_initial(0);
    while let Some(v) = queue.pop_front() {
        let q = ids[&v];
        for e in &g.edges[v] {
            let Some(&letter) = e.word.first() else { continue };
            let mut out = Vec::new();
            let w = follow(g, sol, e.target, &mut out)?;
            if letter == ENDMARKER {
                if let Some(c) = completion(w) {
                    out.extend(c);
                    t.set_final(q, out);
                }
                continue;
            }
            let r = match ids.get(&w) {
                Some(&r) => r,
                None => {
                    let r = t.add_fresh_state(&state_name(&g.labels[w]));
                    ids.insert(w, r);
                    queue.push_back(w);
                    r
                }
            };
            t.add_transition(q, vec![letter], out, r);
        }
    }
    SequentialTransducer::new(t)
}
