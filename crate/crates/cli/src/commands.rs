use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use perfmix::census::{census_distinct, census_nonequivalent, Enumerator, CENSUS_SPACE_LIMIT};
use perfmix::construct::{
    cyclic_sum_quasigroup, default_inner_partitions, doubling, heden_substitute, herzog_schonheim,
    hs_subgroup_partition, prop1_product, theorem4_construct, theorem5_concatenate, theorem6_family,
    theorem6_product, ProductSpec,
};
use perfmix::grm::{grm_generate, grm_table_row, is_rm_like, table_range, GrmSpec, GrmTableRow};
use perfmix::mdsq::{
    code_from_quasigroup, format_quasigroup, is_mds2, linear_mds2, parse_quasigroup, quasigroup_library,
    Quasigroup,
};
use perfmix::partition::{
    coset_partition_rm, format_partition, hamming_code, hamming_coset_partition, parse_partition,
    space_partition_mds, validate_partition, Partition,
};
use perfmix::space::{
    are_equivalent, covering_radius, format_code, is_perfect, parse_code, Equivalence, PerfectCertificate,
};
use perfmix::{Code, Gate};

use crate::output::{read, Outcome};
use crate::*;

pub fn run(cli: &Cli, gate: Gate) -> Result<Outcome> {
    match &cli.command {
        Command::Grm(a) => grm(a),
        Command::Mds2(a) => mds2(a, gate),
        Command::Qgroup(a) => qgroup(a),
        Command::Partition(a) => partition(a),
        Command::Construct(a) => construct(a, gate, cli.verbose),
        Command::Verify(a) => verify(a, gate),
        Command::Equiv(a) => equiv(a),
        Command::Census(a) => census(a),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("missing --{flag}"))
}

fn load_code(p: &std::path::Path) -> Result<Code> {
    parse_code(&read(p)?).with_context(|| format!("parsing {}", p.display()))
}

fn load_partition(p: &std::path::Path) -> Result<Partition> {
    parse_partition(&read(p)?).with_context(|| format!("parsing {}", p.display()))
}

fn load_quasigroup(p: &std::path::Path) -> Result<Quasigroup> {
    parse_quasigroup(&read(p)?).with_context(|| format!("parsing {}", p.display()))
}

/// |V|, |C|, d, e and ρ; the radii need a full scan and are null above the
/// gate. Also returns the 1-perfection certificate when one was computed.
fn summary(c: &Code, gate: Gate) -> Result<(Value, Option<PerfectCertificate>)> {
    let d = c.minimum_distance().ok();
    let mut perfect = None;
    let (e, rho) = if c.space().size() <= gate.0 as u128 && d.is_some() {
        let cert = is_perfect(c, 1, gate)?;
        let radii = (Some(cert.packing_radius), Some(cert.covering_radius));
        perfect = Some(cert);
        radii
    } else if c.space().size() <= gate.0 as u128 {
        (None, Some(covering_radius(c, gate)?))
    } else {
        (d.map(|d| (d - 1) / 2), None)
    };
    let v = json!({
        "space_size": c.space().size().to_string(),
        "code_size": c.len(),
        "length": c.length(),
        "orders": c.space().orders(),
        "d": d,
        "e": e,
        "rho": rho,
    });
    Ok((v, perfect))
}

fn render_table(rows: &[GrmTableRow]) -> String {
    let mut out = format!(
        "{:>2} {:>2} {:>3} {:>3} {:>10} {:>7} {:>10} {:>11}  {}\n",
        "q", "m", "r", "n", "k(formula)", "k(rank)", "d(formula)", "d(measured)", "route"
    );
    for r in rows {
        out += &format!(
            "{:>2} {:>2} {:>3} {:>3} {:>10} {:>7} {:>10} {:>11}  {}{}\n",
            r.q,
            r.m,
            r.r,
            r.n,
            r.k_formula,
            r.k_rank,
            r.d_formula,
            r.d_measured,
            r.route,
            if r.matches() { "" } else { "  MISMATCH" }
        );
    }
    out
}

fn grm(a: &GrmArgs) -> Result<Outcome> {
    if a.table {
        let triples: Vec<(u8, u32, i64)> = table_range()
            .into_iter()
            .filter(|&(q, m)| a.q.is_none_or(|x| x == q) && a.m.is_none_or(|x| x == m))
            .flat_map(|(q, m)| (0..=((q as i64 - 1) * m as i64)).map(move |r| (q, m, r)))
            .filter(|&(_, _, r)| a.r.is_none_or(|x| x == r))
            .collect();
        if triples.is_empty() {
            bail!("no supported (q, m, r) matches the filters");
        }
        let rows = triples
            .par_iter()
            .map(|&(q, m, r)| grm_table_row(q, m, r))
            .collect::<perfmix::Result<Vec<_>>>()?;
        let pass = rows.iter().all(GrmTableRow::matches);
        let mut out = Outcome::new(pass, json!({ "rows": rows.len(), "mismatches": rows.iter().filter(|r| !r.matches()).count() }))
            .cert_to(&a.cert, &None);
        out.text = Some(render_table(&rows));
        return Ok(out);
    }
    let (q, m, r) = (need(a.q, "q")?, need(a.m, "m")?, need(a.r, "r")?);
    let row = grm_table_row(q, m, r)?;
    let code = if a.emit_code.is_some() {
        let (_, code) = grm_generate(GrmSpec::new(q, m, r)?)?;
        Some(code.ok_or_else(|| anyhow!("the code has too many words to write out"))?)
    } else {
        None
    };
    Outcome::new(row.matches(), json!({ "row": row }))
        .file(&a.emit_code, || Ok(format_code(code.as_ref().unwrap())))
        .map(|o| o.cert_to(&a.cert, &a.emit_code))
}

fn mds2(a: &Mds2Args, gate: Gate) -> Result<Outcome> {
    let code = if let Some(p) = &a.input {
        load_code(p)?
    } else if let Some(p) = &a.from_qgroup {
        code_from_quasigroup(&load_quasigroup(p)?)?.into_code()
    } else {
        linear_mds2(need(a.q, "q")?, need(a.n, "n")?)?.into_code()
    };
    let cert = is_mds2(&code);
    let (summary, _) = summary(&code, gate)?;
    Outcome::new(cert.pass, json!({ "mds2": cert, "code": summary }))
        .file(&a.out, || Ok(format_code(&code)))
        .map(|o| o.cert_to(&a.cert, &a.out))
}

fn qgroup(a: &QgroupArgs) -> Result<Outcome> {
    let (g, library_size) = if let Some(p) = &a.input {
        (load_quasigroup(p)?, None)
    } else {
        let lib = quasigroup_library(need(a.order, "order")?, need(a.arity, "arity")?)?;
        let n = lib.len();
        let g = lib
            .into_iter()
            .nth(a.index)
            .ok_or_else(|| anyhow!("--index {} outside the library of {n}", a.index))?;
        (g, Some(n))
    };
    let code = match &a.to_code {
        Some(_) => Some(code_from_quasigroup(&g)?.into_code()),
        None => None,
    };
    let mds = code.as_ref().map(is_mds2);
    let pass = mds.as_ref().is_none_or(|c| c.pass);
    Outcome::new(
        pass,
        json!({
            "arity": g.arity(),
            "order": g.order(),
            "library_size": library_size,
            "mds2": mds,
        }),
    )
    .file(&a.out, || Ok(format_quasigroup(&g)))?
    .file(&a.to_code, || Ok(format_code(code.as_ref().unwrap())))
    .map(|o| o.cert_to(&a.cert, &a.out))
}

fn partition(a: &PartitionArgs) -> Result<Outcome> {
    let p = match a.kind {
        PartitionKind::Coset => coset_partition_rm(need(a.q, "q")?, need(a.m, "m")?)?,
        PartitionKind::File => {
            let path = a.input.as_ref().ok_or_else(|| anyhow!("--kind file needs --in"))?;
            let p = load_partition(path)?;
            if let (Some(q), Some(m)) = (a.q, a.m) {
                if p.params() != Some((q, m)) {
                    bail!("{} holds a partition with parameters {:?}, not ({q}, {m})", path.display(), p.params());
                }
            }
            p
        }
    };
    let cert = validate_partition(&p);
    Outcome::new(cert.pass, json!({ "partition": cert }))
        .file(&a.out, || Ok(format_partition(&p)?))
        .map(|o| o.cert_to(&a.cert, &a.out))
}

/// Reads a 1-based permutation and returns it 0-based.
fn load_perm(path: &Option<std::path::PathBuf>, n: usize) -> Result<Vec<usize>> {
    let Some(p) = path else {
        return Ok((0..n).collect());
    };
    let perm = read(p)?
        .split_whitespace()
        .map(|t| match t.parse::<usize>() {
            Ok(x) if x >= 1 => Ok(x - 1),
            _ => Err(anyhow!("{}: {t:?} is not a positive integer", p.display())),
        })
        .collect::<Result<Vec<_>>>()?;
    if perm.len() != n {
        bail!("{}: expected a permutation of 1..{n}, got {} entries", p.display(), perm.len());
    }
    Ok(perm)
}

enum Built {
    Code { code: Code, perfect: bool, details: Value },
    Family(Partition),
}

fn construct(a: &ConstructArgs, gate: Gate, verbose: u8) -> Result<Outcome> {
    let q = a.q.unwrap_or(2);
    let m = a.m.unwrap_or(2);
    let primary = |default: &dyn Fn() -> perfmix::Result<Partition>| -> Result<Partition> {
        match &a.partition {
            Some(p) => load_partition(p),
            None => Ok(default()?),
        }
    };
    let secondary = |default: &dyn Fn() -> perfmix::Result<Partition>| -> Result<Partition> {
        match &a.partition2 {
            Some(p) => load_partition(p),
            None => Ok(default()?),
        }
    };
    let (parameters, built) = match a.kind {
        Construction::Hs => {
            let alpha = a.alpha.unwrap_or(2);
            let m = a.m.unwrap_or(3);
            let sp = hs_subgroup_partition(q, m, alpha)?;
            let code = herzog_schonheim(&sp)?;
            let details = json!({ "subgroup_orders": sp.orders() });
            (json!({ "q": q, "m": m, "alpha": alpha }), Built::Code { code, perfect: true, details })
        }
        Construction::Heden => {
            let mut code = match &a.input {
                Some(p) => load_code(p)?,
                None => hamming_code(4, 2)?,
            };
            let part = primary(&|| hamming_coset_partition(2, 2))?;
            let sphere = part.space().sphere(1).size;
            let mut steps = Vec::new();
            while a.steps.is_none_or(|s| steps.len() < s) {
                let Some(pos) = code.space().orders().iter().rposition(|&o| o as u128 == sphere) else {
                    break;
                };
                code = heden_substitute(&code, &part, pos)?;
                if verbose > 0 {
                    eprintln!("heden: substituted coordinate {pos}, now {:?}", code.space().orders());
                }
                steps.push(json!({ "position": pos, "orders": code.space().orders() }));
            }
            if a.steps.is_some_and(|s| steps.len() < s) {
                bail!("only {} substitutions possible, --steps asked for {}", steps.len(), a.steps.unwrap());
            }
            (json!({ "steps": steps.len() }), Built::Code { code, perfect: true, details: json!({ "chain": steps }) })
        }
        Construction::Doubling => {
            let cp = primary(&|| coset_partition_rm(2, m))?;
            let cpp = secondary(&|| hamming_coset_partition(2, m))?;
            let pi = load_perm(&a.perm, cp.len())?;
            let code = doubling(&cp, &cpp, &pi)?;
            (json!({ "m": m, "perm": pi }), Built::Code { code, perfect: true, details: Value::Null })
        }
        Construction::Thm4 => {
            let p = primary(&|| coset_partition_rm(q, m))?;
            let code = theorem4_construct(&p)?;
            (json!({ "q": q, "m": m }), Built::Code { code, perfect: true, details: Value::Null })
        }
        Construction::Thm5 => {
            let p = primary(&|| coset_partition_rm(q, m))?;
            let hp = secondary(&|| hamming_coset_partition(q, m))?;
            let pi = load_perm(&a.perm, p.len())?;
            let code = theorem5_concatenate(&p, &hp, &pi)?;
            (json!({ "q": q, "m": m, "perm": pi }), Built::Code { code, perfect: true, details: Value::Null })
        }
        Construction::Prop1 => {
            let (m1, m2) = (a.m1.unwrap_or(1), a.m2.unwrap_or(1));
            let n1 = (q as usize).checked_pow(m1).ok_or_else(|| anyhow!("q^m1 overflows"))?;
            let n2 = (q as usize).checked_pow(m2).ok_or_else(|| anyhow!("q^m2 overflows"))?;
            let parts = space_partition_mds(q, n1)?;
            let outer = linear_mds2(q, n2)?;
            let code = prop1_product(&parts, &outer)?.into_code();
            let details = json!({ "mds2": is_mds2(&code) });
            (json!({ "q": q, "m1": m1, "m2": m2 }), Built::Code { code, perfect: false, details })
        }
        Construction::Thm6 => {
            let (m1, m2) = (a.m1.unwrap_or(1), a.m2.unwrap_or(1));
            let arity = (q as usize).pow(m2) - 1;
            let order = (q as usize).pow(m1);
            let g = match &a.qgroups {
                Some(p) => load_quasigroup(p)?,
                None => cyclic_sum_quasigroup(arity, order)?,
            };
            let spec = ProductSpec::uniform(m1, m2, g);
            let inner = default_inner_partitions(q, m1)?;
            let outer = coset_partition_rm(q, m2)?;
            let parameters = json!({ "q": q, "m1": m1, "m2": m2 });
            if a.family {
                (parameters, Built::Family(theorem6_family(&inner, &outer, &spec)?))
            } else {
                let code = theorem6_product(&inner, outer.class(0), &spec)?;
                let r = (q as i64 - 1) * (m1 + m2) as i64 - 2;
                let details = json!({ "rm_like": is_rm_like(&code, q, m1 + m2, r) });
                (parameters, Built::Code { code, perfect: false, details })
            }
        }
    };
    let construction = serde_json::to_value(a.kind)?;
    match built {
        Built::Family(p) => {
            let cert = validate_partition(&p);
            Outcome::new(
                cert.pass,
                json!({ "construction": construction, "parameters": parameters, "family": cert }),
            )
            .file(&a.out, || Ok(format_partition(&p)?))
            .map(|o| o.cert_to(&a.cert, &a.out))
        }
        Built::Code { code, perfect, details } => {
            let (summary, scan) = summary(&code, gate)?;
            let pass = if perfect {
                scan.ok_or_else(|| anyhow!("|V| = {} is above the gate; raise --gate", code.space().size()))?
                    .perfect
            } else {
                ["mds2", "rm_like"].iter().any(|k| details[k]["pass"] == json!(true))
            };
            let mut cert = json!({ "construction": construction, "parameters": parameters });
            merge(&mut cert, summary);
            if !details.is_null() {
                cert["details"] = details;
            }
            Outcome::new(pass, cert)
                .file(&a.out, || Ok(format_code(&code)))
                .map(|o| o.cert_to(&a.cert, &a.out))
        }
    }
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn verify(a: &VerifyArgs, gate: Gate) -> Result<Outcome> {
    let outcome = match a.property {
        Property::Perfect => {
            let code = load_code(&a.input)?;
            let cert = is_perfect(&code, a.e, gate)?;
            Outcome::new(cert.perfect, json!({ "perfect": cert, "rho": cert.covering_radius, "e": cert.packing_radius }))
        }
        Property::Mds2 => {
            let cert = is_mds2(&load_code(&a.input)?);
            Outcome::new(cert.pass, json!({ "mds2": cert }))
        }
        Property::RmLike => {
            let code = load_code(&a.input)?;
            let q = match a.q {
                Some(q) => q,
                None => code
                    .space()
                    .uniform_order()
                    .ok_or_else(|| anyhow!("mixed alphabets; pass --q"))?,
            };
            let m = match a.m {
                Some(m) => m,
                None => (1..=6u32)
                    .find(|&m| (q as usize).pow(m) == code.length())
                    .ok_or_else(|| anyhow!("length {} is not a power of {q}; pass --m", code.length()))?,
            };
            let r = a.r.unwrap_or((q as i64 - 1) * m as i64 - 2);
            let cert = is_rm_like(&code, q, m, r);
            Outcome::new(cert.pass, json!({ "rm_like": cert }))
        }
        Property::Partition => {
            let cert = validate_partition(&load_partition(&a.input)?);
            Outcome::new(cert.pass, json!({ "partition": cert }))
        }
    };
    Ok(outcome.cert_to(&a.cert, &None))
}

fn equiv(a: &EquivArgs) -> Result<Outcome> {
    let (c, d) = (load_code(&a.a)?, load_code(&a.b)?);
    let outcome = match are_equivalent(&c, &d, a.budget)? {
        Equivalence::Equivalent(w) => {
            if !w.verify(&c, &d) {
                bail!("internal error: the witness does not map the first code onto the second");
            }
            Outcome::new(true, json!({ "result": "equivalent", "witness": w }))
        }
        Equivalence::Nonequivalent(inv) => {
            Outcome::new(false, json!({ "result": "nonequivalent", "separated_by": inv }))
        }
        Equivalence::Unknown => Outcome::new(false, json!({ "result": "unknown", "budget": a.budget })),
    };
    Ok(outcome.cert_to(&a.cert, &None))
}

fn census(a: &CensusArgs) -> Result<Outcome> {
    if !a.codes.is_empty() {
        let codes = a.codes.iter().map(|p| load_code(p)).collect::<Result<Vec<_>>>()?;
        let report = census_nonequivalent(&codes, a.budget)?;
        return Ok(Outcome::new(true, json!({ "report": report })).cert_to(&a.out, &None));
    }
    let (q, m1, m2) = (need(a.q, "q")?, need(a.m1, "m1")?, need(a.m2, "m2")?);
    let enumerator = match a.mode {
        CensusMode::Seeded => Enumerator::Seeded { seed: a.seed },
        CensusMode::Single => Enumerator::SingleSlot {
            slot: a.slot,
            base: a.base,
        },
        CensusMode::Exhaustive => Enumerator::Exhaustive,
    };
    let mut report = census_distinct(q, m1, m2, &enumerator, a.limit)?;
    let size = (q as u128).checked_pow((q as u32).pow(m1 + m2)).unwrap_or(u128::MAX);
    if a.budget > 0 && size <= CENSUS_SPACE_LIMIT as u128 {
        let eq = census_nonequivalent(&report.codes, a.budget)?;
        report.nonequivalent_lower_bound = eq.nonequivalent_lower_bound;
        report.undecided_pairs = eq.undecided_pairs;
    }
    let cert = json!({ "report": report });
    Ok(Outcome::new(true, cert).cert_to(&a.out, &None))
}
