//! One function per subcommand. Each returns a [`Report`] whose status is the
//! process exit code; library errors map to statuses through their kind.

use lattice_actions::action::{analyze, Analysis, LatticeAction, DEFAULT_BOUND};
use lattice_actions::catalog::{classify_order3_on_2u, fixture, torus_symplectic_survey, FIXTURES};
use lattice_actions::degeneration::{degenerate, tau_saturation, verify_degeneration};
use lattice_actions::lattice::{discriminant_form, Sublattice};
use lattice_actions::matrix::{fmt_qvec, fmt_vec, ZVector};
use lattice_actions::walls::{wall_report, WallReport};
use lattice_actions::{Error, Result};
use num_bigint::BigInt;

use crate::action_file::{parse_integer, ActionFile};
use crate::report::{Report, Status};

fn run(title: &str, f: impl FnOnce(&mut Report) -> Result<()>) -> Report {
    let mut r = Report::new(title);
    match f(&mut r) {
        Ok(()) => r,
        Err(e) => {
            r.push("error", &e);
            r.status = e.kind().into();
            r
        }
    }
}

pub fn load_action(text: &str) -> Result<LatticeAction> {
    ActionFile::parse(text)?.to_action()
}

fn push_analysis(r: &mut Report, a: &LatticeAction, an: &Analysis) {
    let l = a.ambient();
    r.push("lattice.rank", l.rank());
    r.push("lattice.signature", l.signature());
    r.push("lattice.even", l.is_even());
    r.push("group.order", an.group.order());
    let anti = (0..an.group.order()).filter(|&i| an.group.kappa(i) == -1).count();
    r.push("group.antiholomorphic", anti);
    r.push("fixed.rank", an.invariant.rank());
    r.push("fixed.signature", an.invariant.signature(l));
    r.push("fixed.gram", an.invariant.gram(l));
    r.push("rho.order", an.fundamental.order);
    r.push("rho.real", an.fundamental.real);
    r.push("rho.rank", an.rho.rank());
    if let Some(j) = &an.complex_structure {
        r.push("complex.m", &j.m);
    }
    if let Some(e) = &an.eigen {
        r.push("eigen.plus.rank", e.m_plus.rank());
        r.push("eigen.plus.gram", e.m_plus.gram(l));
        r.push("eigen.minus.rank", e.m_minus.rank());
        r.push("eigen.minus.gram", e.m_minus.gram(l));
    }
    r.push("ldot.rank", an.geometric.ldot.rank());
    r.push("ldot.roots", an.geometric.roots.len());
    r.push("geometric", an.geometric.is_geometric());
    if let Some(w) = an.geometric.roots.first() {
        r.push("geometric.witness", fmt_vec(w));
    }
}

/// Fundamental data, eigenlattices and the geometric test.
pub fn check(text: &str) -> Report {
    run("check", |r| {
        let a = load_action(text)?;
        let an = analyze(&a, DEFAULT_BOUND)?;
        push_analysis(r, &a, &an);
        if !an.geometric.is_geometric() {
            r.note("L• contains roots; the witness is listed up to sign");
        }
        Ok(())
    })
}

fn push_walls(r: &mut Report, w: &WallReport) {
    r.push("walls.candidates", w.candidate_count);
    r.push("walls.count", w.walls.len());
    r.push("components", w.components);
    r.push("complete", w.complete);
    for (i, wall) in w.walls.iter().enumerate() {
        r.push(format!("wall.{i}.root"), fmt_vec(&wall.root));
        if let Some(n) = &wall.normal {
            r.push(format!("wall.{i}.normal"), fmt_vec(n));
        }
        if let Some(d) = &wall.direction {
            r.push(format!("wall.{i}.direction"), fmt_vec(d));
        }
    }
    r.note(WallReport::CAVEAT);
}

/// Walls and components in `H⁺`; needs an antiholomorphic element and
/// eigenlattices of rank 2.
pub fn walls(text: &str, bound: Option<i64>) -> Report {
    run("walls", |r| {
        let a = load_action(text)?;
        let an = analyze(&a, DEFAULT_BOUND)?;
        let e = an.eigen.as_ref().ok_or_else(|| Error::Unsupported("walls need an antiholomorphic element".into()))?;
        let w = wall_report(a.ambient(), e, an.complex_structure.as_ref(), bound)?;
        push_walls(r, &w);
        if !w.complete {
            r.note("candidate search was bounded; the wall list may be incomplete");
        }
        Ok(())
    })
}

/// Parses `1,-1,0` into a vector of length `n`, padding with zeros.
pub fn parse_vector(s: &str, n: usize) -> Result<ZVector> {
    let mut v: Vec<BigInt> = s.split(',').map(|x| parse_integer(x.trim())).collect::<Result<_>>()?;
    if v.len() > n {
        return Err(Error::Parse(format!("vector {s:?} has more than {n} coordinates")));
    }
    v.resize(n, BigInt::default());
    Ok(v)
}

/// Degeneration at the system generated by `roots`. Returns the report and
/// the new action file; the status is 1 when any check fails.
pub fn degenerate_roots(text: &str, roots: &[String]) -> (Report, Option<String>) {
    let mut out = None;
    let r = run("degenerate", |r| {
        let a = load_action(text)?;
        let l = a.ambient();
        let vs: Vec<ZVector> = roots.iter().map(|s| parse_vector(s, l.rank())).collect::<Result<_>>()?;
        for v in &vs {
            if l.norm(v) != BigInt::from(-2) {
                return Err(Error::Precondition(format!("{} is not a root", fmt_vec(v))));
            }
        }
        let an = analyze(&a, DEFAULT_BOUND)?;
        let sat = tau_saturation(&a, &an, &Sublattice::span(l.rank(), &vs))?;
        r.push("saturated.type", sat.system.type_string());
        r.push("saturated.rank", sat.system.rank());
        r.push("saturated.roots", sat.system.roots().len());
        r.push("saturated.rounds", sat.rounds);
        let d = degenerate(&a, &an, &sat)?;
        for f in &d.factors {
            let letters: Vec<String> = f.w.letters.iter().map(|i| i.to_string()).collect();
            r.push(format!("factor.{}.word", f.generator), format!("[{}]", letters.join(",")));
            let perm: Vec<String> = f.permutation.iter().map(|i| i.to_string()).collect();
            r.push(format!("factor.{}.permutation", f.generator), format!("[{}]", perm.join(",")));
        }
        let report = verify_degeneration(&a, &sat, &d);
        for c in &report.checks {
            r.push(format!("check.{}", c.name), if c.passed { "pass" } else { "fail" });
            if !c.passed {
                r.note(format!("{}: {}", c.name, c.detail));
            }
        }
        r.push("verified", report.all_passed());
        if !report.all_passed() {
            r.status = Status::Verification;
        }
        out = Some(ActionFile::from_action(&d.action, Some("degenerated action")).to_toml());
        Ok(())
    });
    (r, out)
}

/// The action file of a named fixture, or the fixture list.
pub fn catalog(name: Option<&str>) -> std::result::Result<String, Report> {
    match name {
        None => Ok(FIXTURES.iter().map(|f| format!("{f}\n")).collect()),
        Some(n) => match fixture(n) {
            Ok(f) => Ok(ActionFile::from_action(&f.action, Some(f.name)).to_toml()),
            Err(e) => Err(Report::failure("catalog", &e)),
        },
    }
}

pub fn classify(kind: &str, bound: i64) -> Report {
    run("classify", |r| {
        if kind != "order3-2u" {
            return Err(Error::Parse(format!("unknown classification {kind:?}; expected order3-2u")));
        }
        if bound < 0 {
            return Err(Error::Precondition("bound must be nonnegative".into()));
        }
        let rep = classify_order3_on_2u(bound);
        r.push("classify.bound", rep.bound);
        r.push("classify.hits", rep.hits.len());
        for (k, v) in &rep.class_counts {
            r.push(format!("class.{k}"), v);
        }
        r.push("classify.all_three", rep.all_three_occur());
        r.note(lattice_actions::catalog::Order3Report::CAVEAT);
        Ok(())
    })
}

pub fn survey(kind: &str) -> Report {
    run("survey", |r| {
        if kind != "torus" {
            return Err(Error::Parse(format!("unknown survey {kind:?}; expected torus")));
        }
        for e in torus_symplectic_survey()? {
            r.push(format!("survey.{}.weyl", e.root_type), e.weyl_order);
            r.push(format!("survey.{}.rotations", e.root_type), e.rotation_order);
            let emb: Vec<String> = e.embedding.iter().map(|v| fmt_vec(v)).collect();
            r.push(format!("survey.{}.embedding", e.root_type), format!("[{}]", emb.join(",")));
        }
        Ok(())
    })
}

pub fn discr(text: &str) -> Report {
    run("discr", |r| {
        let a = load_action(text)?;
        let d = discriminant_form(a.ambient())?;
        r.push("lattice.rank", a.rank());
        r.push("discr.order", d.order());
        r.push("discr.invariant_factors", fmt_vec(&d.invariant_factors));
        if let Some(q) = &d.q_values {
            r.push("discr.q", fmt_qvec(q));
        }
        let b: Vec<String> = d.b_values.iter().map(|row| fmt_qvec(row)).collect();
        r.push("discr.b", format!("[{}]", b.join(",")));
        Ok(())
    })
}
