//! Text, JSON and DOT renderings of results.

use std::fmt::Write;

use serde::Serialize;

use crate::algorithm::{CompatResult, Round, Variant};
use crate::decompose::PrimeComponent;
use crate::frobenius::PhiMap;
use crate::groebner::Ideal;

#[derive(Serialize)]
struct Field {
    p: u32,
}

#[derive(Serialize)]
struct Generators {
    generators: Vec<String>,
}

#[derive(Serialize)]
struct JsonPrime {
    id: usize,
    generators: Vec<String>,
    certified: bool,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct JsonRound {
    round: usize,
    Q: Vec<String>,
    J: Vec<String>,
    B: Vec<String>,
    C: Option<Vec<String>>,
    chain_length: usize,
    bound: u64,
    minimal_primes: Vec<Vec<String>>,
    note: Option<String>,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct JsonResult {
    field: Field,
    vars: Vec<String>,
    e: u32,
    u: String,
    surjective: bool,
    K: Generators,
    primes: Vec<JsonPrime>,
    edges: Vec<[usize; 2]>,
    trace: Vec<JsonRound>,
}

/// Reduced basis as strings.
pub fn generators(i: &Ideal) -> Vec<String> {
    i.groebner_basis().iter().map(|g| g.to_string()).collect()
}

fn json_round(idx: usize, r: &Round) -> JsonRound {
    JsonRound {
        round: idx,
        Q: generators(&r.q),
        J: generators(&r.j),
        B: generators(&r.b),
        C: r.c.as_ref().map(generators),
        chain_length: r.chain_length,
        bound: r.bound,
        minimal_primes: r
            .minimal_primes
            .iter()
            .map(|pc| generators(&pc.ideal))
            .collect(),
        note: r.note.clone(),
    }
}

/// The result as pretty JSON; the trace array stays empty unless requested.
pub fn result_json(phi: &PhiMap, res: &CompatResult, trace: bool) -> String {
    let ring = phi.ring();
    let out = JsonResult {
        field: Field { p: ring.p() },
        vars: ring.vars().to_vec(),
        e: phi.e(),
        u: phi.u().to_string(),
        surjective: res.surjective,
        K: Generators {
            generators: generators(&res.k),
        },
        primes: res
            .primes
            .iter()
            .enumerate()
            .map(|(id, pc)| JsonPrime {
                id,
                generators: generators(&pc.ideal),
                certified: pc.certified,
            })
            .collect(),
        edges: res.edges.iter().map(|&(a, b)| [a, b]).collect(),
        trace: if trace {
            res.trace
                .iter()
                .enumerate()
                .map(|(i, r)| json_round(i, r))
                .collect()
        } else {
            Vec::new()
        },
    };
    serde_json::to_string_pretty(&out).expect("serialisable") + "\n"
}

fn flag(pc: &PrimeComponent) -> &'static str {
    if pc.certified {
        ""
    } else {
        "  (primality not certified)"
    }
}

pub fn result_text(phi: &PhiMap, res: &CompatResult, trace: bool) -> String {
    let ring = phi.ring();
    let mut s = String::new();
    writeln!(s, "field: F_{}", ring.p()).unwrap();
    writeln!(s, "vars: {}", ring.vars().join(", ")).unwrap();
    writeln!(s, "e: {}", phi.e()).unwrap();
    writeln!(s, "u: {}", phi.u()).unwrap();
    writeln!(s, "surjective: {}", res.surjective).unwrap();
    let variant = match res.variant {
        Variant::Surjective => "surjective",
        Variant::General => "general",
    };
    writeln!(s, "algorithm: {variant}").unwrap();
    writeln!(s, "K: {}", res.k).unwrap();
    writeln!(s, "primes: {}", res.primes.len()).unwrap();
    for (id, pc) in res.primes.iter().enumerate() {
        writeln!(s, "  [{id}] {}{}", pc.ideal, flag(pc)).unwrap();
    }
    writeln!(s, "edges: {}", res.edges.len()).unwrap();
    for (a, b) in &res.edges {
        writeln!(s, "  {a} < {b}").unwrap();
    }
    for note in &res.notes {
        writeln!(s, "note: {note}").unwrap();
    }
    if trace {
        for (idx, r) in res.trace.iter().enumerate() {
            writeln!(s, "round {idx}").unwrap();
            writeln!(s, "  Q = {}", r.q).unwrap();
            writeln!(s, "  J = {}", r.j).unwrap();
            writeln!(s, "  B = {}", r.b).unwrap();
            match &r.c {
                Some(c) => {
                    writeln!(s, "  C = {c}  (t = {}, bound {})", r.chain_length, r.bound).unwrap()
                }
                None => writeln!(s, "  C not computed").unwrap(),
            }
            for pc in &r.minimal_primes {
                let kept = r.kept.iter().any(|k| k.ideal.equals(&pc.ideal));
                let tag = if kept { "" } else { "  (contains K)" };
                writeln!(s, "  minimal prime {}{}{}", pc.ideal, tag, flag(pc)).unwrap();
            }
            if let Some(note) = &r.note {
                writeln!(s, "  note: {note}").unwrap();
            }
        }
    }
    s
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram with smaller primes at the bottom.
pub fn result_dot(res: &CompatResult) -> String {
    let mut s = String::from("digraph compatible {\n  rankdir=BT;\n  node [shape=box];\n");
    for (id, pc) in res.primes.iter().enumerate() {
        let style = if pc.certified { "" } else { ", style=dashed" };
        writeln!(
            s,
            "  p{id} [label=\"{}\"{style}];",
            dot_escape(&pc.ideal.to_string())
        )
        .unwrap();
    }
    for (a, b) in &res.edges {
        writeln!(s, "  p{a} -> p{b};").unwrap();
    }
    s.push_str("}\n");
    s
}

/// `{"generators": [...]}`.
pub fn ideal_json(i: &Ideal) -> String {
    serde_json::to_string_pretty(&Generators {
        generators: generators(i),
    })
    .expect("serialisable")
        + "\n"
}

/// `{"primes": [{"id", "generators", "certified"}]}`.
pub fn primes_json(ps: &[PrimeComponent]) -> String {
    #[derive(Serialize)]
    struct Out {
        primes: Vec<JsonPrime>,
    }
    let out = Out {
        primes: ps
            .iter()
            .enumerate()
            .map(|(id, pc)| JsonPrime {
                id,
                generators: generators(&pc.ideal),
                certified: pc.certified,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&out).expect("serialisable") + "\n"
}
