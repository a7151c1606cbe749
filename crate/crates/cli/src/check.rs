use serde::Serialize;
use xhermite::exactpoly::rat;
use xhermite::hermite::{eta_squared_embed, ExceptionalBasis};
use xhermite::monodromy::{
    constraint_membership, monodromy_certificate, ConstraintScale, ConstraintSystem, MonodromyCertificate,
};
use xhermite::mp::Precision;
use xhermite::{ExactPoly, Partition};

use crate::{emit, to_json, CmdResult, Common, Failure, Format, TOOL, VERSION};

#[derive(Serialize)]
struct MembershipAgreement {
    polynomial: String,
    exact_member: bool,
    numeric_member: bool,
    max_ratio: f64,
}

#[derive(Serialize)]
struct Certificate {
    tool: &'static str,
    version: &'static str,
    partition: Partition,
    tolerance: f64,
    precision_digits: usize,
    monodromy: MonodromyCertificate,
    membership: Vec<MembershipAgreement>,
    /// `H_lambda^2 p` for `p = 1, x, x^2` expands exactly over the basis.
    h_squared_members: bool,
    passed: bool,
    failures: Vec<String>,
}

// monomials through degree |lambda| + 5, two basis elements and H_lambda^2 (1 + x)
fn probes(lam: &Partition, basis: &ExceptionalBasis) -> xhermite::Result<Vec<ExactPoly>> {
    let mut out: Vec<ExactPoly> = (0..=lam.size() + 5).map(|d| ExactPoly::monomial(rat(1), d)).collect();
    for i in basis.admissible_indices(2) {
        out.push(basis.element(i)?);
    }
    let h = basis.h_lambda();
    out.push(&(h * h) * &ExactPoly::from_ints(&[1, 1]));
    Ok(out)
}

pub fn cmd_check(c: &Common, lam: &Partition, k_max: Option<usize>) -> CmdResult {
    let prec = Precision::from_digits(c.digits);
    let sys = ConstraintSystem::new(lam, prec)?;
    let monodromy = monodromy_certificate(&sys, c.tol, k_max.unwrap_or(lam.size() + 5))?;
    let mut failures = monodromy.failures();

    let basis = ExceptionalBasis::new(lam);
    let mut membership = Vec::new();
    for p in probes(lam, &basis)? {
        let exact = basis.membership(&p)?.member;
        let numeric = constraint_membership(&sys, &p, c.tol, ConstraintScale::Reference)?;
        if exact != numeric.member {
            failures.push(format!("membership oracles disagree on {p}"));
        }
        membership.push(MembershipAgreement {
            polynomial: p.to_string(),
            exact_member: exact,
            numeric_member: numeric.member,
            max_ratio: numeric.max_ratio,
        });
    }
    let mut h_squared_members = true;
    for p in [ExactPoly::one(), ExactPoly::x(), ExactPoly::monomial(rat(1), 2)] {
        if let Err(e) = eta_squared_embed(&basis, &p) {
            h_squared_members = false;
            failures.push(e.to_string());
        }
    }

    let cert = Certificate {
        tool: TOOL,
        version: VERSION,
        partition: lam.clone(),
        tolerance: c.tol,
        precision_digits: c.digits,
        passed: failures.is_empty(),
        monodromy,
        membership,
        h_squared_members,
        failures: failures.clone(),
    };
    let body = match c.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&cert),
        Format::Csv | Format::Text => text(&cert),
    };
    emit(c, &body)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(failures.join("; ")))
    }
}

fn text(cert: &Certificate) -> String {
    let mut s = format!(
        "partition {}  tol {:e}  digits {}\n",
        cert.partition, cert.tolerance, cert.precision_digits
    );
    for r in &cert.monodromy.roots {
        s.push_str(&format!(
            "root {:+.6e}{:+.6e}i  m={} nu={} M={:?}  DG {}\n",
            r.xi_re,
            r.xi_im,
            r.m,
            r.nu,
            r.constraint_orders,
            if r.dg_pass { "pass" } else { "FAIL" }
        ));
    }
    s.push_str(&format!(
        "constraints {} (|lambda| = {})\n",
        cert.monodromy.constraint_count,
        cert.partition.size()
    ));
    let eig_ok = cert.monodromy.eigen_checks.iter().all(|e| e.exact_zero && e.laurent_pass);
    s.push_str(&format!(
        "eigenfunction checks {} ({} values of k)\n",
        if eig_ok { "pass" } else { "FAIL" },
        cert.monodromy.eigen_checks.len()
    ));
    let agree = cert.membership.iter().all(|m| m.exact_member == m.numeric_member);
    s.push_str(&format!(
        "membership oracles {} on {} probes\n",
        if agree { "agree" } else { "DISAGREE" },
        cert.membership.len()
    ));
    s.push_str(if cert.passed { "PASS\n" } else { "FAIL\n" });
    s
}
