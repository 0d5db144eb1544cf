//! Regenerates `samples/proofs/` with the saturation prover.
//! `cargo run --example make_samples -- <out-dir>`

use std::path::PathBuf;

use tabipol::gen::{instance, random_ground_clauses, rng, Family};
use tabipol::interpolate::{interpolate, InterpolationOptions};
use tabipol::logic::Clause;
use tabipol::models::ground_satisfiable;
use tabipol::proof::{print_proof, saturate::refute};
use tabipol::syntax::parse_clause_list;

const HANDWRITTEN: &[(&str, &str)] = &[
    ("fig5", "p. ~p | q. ~q."),
    ("pigeon_3_2", "p11 | p12. p21 | p22. p31 | p32. ~p11 | ~p21. ~p11 | ~p31. ~p21 | ~p31. ~p12 | ~p22. ~p12 | ~p32. ~p22 | ~p32."),
    ("chain", "e(a,b). e(b,c). e(c,d). ~e(X,Y) | r(X,Y). ~r(X,Y) | ~e(Y,Z) | r(X,Z). ~r(a,d)."),
    ("nat", "n(z). ~n(X) | n(s(X)). ~n(s(s(s(z))))."),
    ("example2", "p(X). ~p(X) | q(X). ~q(X) | r(X). ~r(a)."),
    ("skolem", "~p(X) | q(X,f(X)). p(a). ~q(a,Y) | r(Y). ~r(f(a))."),
    ("two_sided", "p(a) | p(b). ~p(X) | q(X). ~q(a). ~q(b)."),
];

fn main() {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "samples/proofs".into()));
    std::fs::create_dir_all(&out).unwrap();
    let mut sets: Vec<(String, Vec<Clause>)> =
        HANDWRITTEN.iter().map(|(n, s)| (n.to_string(), parse_clause_list(s).unwrap())).collect();
    let families = [Family::URestricted, Family::Sentences, Family::FreeVariable, Family::Horn];
    for (k, fam) in families.iter().enumerate() {
        let mut seed = 0;
        let mut taken = 0;
        while taken < 3 {
            let i = instance(*fam, seed);
            seed += 1;
            let Ok(r) = interpolate(&i.f, &i.g, &InterpolationOptions::default()) else { continue };
            let mut cs = r.context.f_clauses.clone();
            cs.extend(r.context.g_clauses.iter().cloned());
            if cs.len() < 5 || cs.iter().any(Clause::is_empty) {
                continue;
            }
            sets.push((format!("kb{k}_{seed}"), cs));
            taken += 1;
        }
    }
    let mut r = rng(2024);
    let mut n = 0;
    while n < 6 {
        let cs = random_ground_clauses(&mut r, 6);
        if cs.len() >= 8 && !ground_satisfiable(&cs) && refute(&cs, 20_000).is_ok_and(|d| d.len() >= 7) {
            sets.push((format!("ground{n}"), cs));
            n += 1;
        }
    }
    for (name, cs) in sets {
        match refute(&cs, 20_000) {
            Ok(doc) => {
                std::fs::write(out.join(format!("{name}.proof")), print_proof(&doc)).unwrap();
                println!("{name}: {} steps", doc.len());
            }
            Err(e) => println!("{name}: {e}"),
        }
    }
}
