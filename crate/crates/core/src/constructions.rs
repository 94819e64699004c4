//! Turnwald's criterion for `Gal(g - t / k(t)) = S_deg g`, and the
//! families `X^{q+j} - jX` and `X^q + X^2`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{embed_field, prime_factors, FieldElement, FieldSpec};
use crate::poly::{resultant_in_y, squarefree_decomposition, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TurnwaldOutcome {
    Pass,
    Fail,
    Inapplicable,
}

impl fmt::Display for TurnwaldOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TurnwaldOutcome::Pass => "pass",
            TurnwaldOutcome::Fail => "fail",
            TurnwaldOutcome::Inapplicable => "inapplicable",
        })
    }
}

#[derive(Debug, Clone)]
pub struct TurnwaldVerdict {
    /// `g' != 0` and the characteristic does not divide `deg g`.
    pub separable_ok: bool,
    pub simple_root_ok: bool,
    pub distinct_critical_values_ok: bool,
    pub verdict: TurnwaldOutcome,
    pub evidence: Vec<String>,
}

fn outcome(separable: bool, simple: bool, distinct: bool) -> TurnwaldOutcome {
    if !separable {
        TurnwaldOutcome::Inapplicable
    } else if simple && distinct {
        TurnwaldOutcome::Pass
    } else {
        TurnwaldOutcome::Fail
    }
}

/// Decides the distinct-critical-values condition through
/// `R(Y) = Res_X(rad g', Y - g)`, whose roots are the `g(α)` for the roots
/// α of `g'`, each once: the values are distinct iff R is squarefree.
pub fn turnwald_check(g: &Polynomial) -> Result<TurnwaldVerdict> {
    let deg = g.degree().unwrap_or(0);
    if deg < 2 {
        return Err(Error::DegreeTooSmall(deg));
    }
    let p = g.spec().p() as usize;
    let gp = g.derivative();
    let mut ev = vec![format!("g = {}", g.pretty()), format!("g' = {}", gp.pretty())];
    let separable_ok = !gp.is_zero() && !deg.is_multiple_of(p);
    if gp.is_zero() {
        ev.push("g' = 0".into());
        return Ok(TurnwaldVerdict {
            separable_ok,
            simple_root_ok: false,
            distinct_critical_values_ok: false,
            verdict: TurnwaldOutcome::Inapplicable,
            evidence: ev,
        });
    }
    if deg.is_multiple_of(p) {
        ev.push(format!("characteristic {p} divides deg g = {deg}"));
    }

    let parts = squarefree_decomposition(&gp)?;
    let sqf: Vec<String> = parts
        .iter()
        .map(|(part, m)| format!("({})^{m}", part.pretty()))
        .collect();
    ev.push(format!(
        "squarefree decomposition of g': {}",
        if sqf.is_empty() { "1".to_string() } else { sqf.join(" ") }
    ));
    let simple_root_ok = parts.iter().any(|(_, m)| *m == 1);
    ev.push(format!("simple root of g': {simple_root_ok}"));

    let rad = parts
        .iter()
        .fold(Polynomial::one(g.spec()), |acc, (part, _)| &acc * part);
    ev.push(format!("rad(g') = {}", rad.pretty()));
    let r = resultant_in_y(&rad, g)?;
    ev.push(format!("R(Y) = {}", r.pretty()).replace('X', "Y"));
    let distinct_critical_values_ok = match r.degree() {
        Some(0) | None => true,
        Some(_) => {
            let rp = r.derivative();
            if rp.is_zero() {
                ev.push("R' = 0: R is a p-th power".into());
                false
            } else {
                let h = r.gcd(&rp)?;
                ev.push(format!("gcd(R, R') = {}", h.pretty()).replace('X', "Y"));
                h.degree() == Some(0)
            }
        }
    };
    ev.push(format!("R squarefree: {distinct_critical_values_ok}"));
    let verdict = outcome(separable_ok, simple_root_ok, distinct_critical_values_ok);
    ev.push(format!("verdict: {verdict}"));
    Ok(TurnwaldVerdict {
        separable_ok,
        simple_root_ok,
        distinct_critical_values_ok,
        verdict,
        evidence: ev,
    })
}

/// Largest splitting field the root oracle will enumerate.
pub const ORACLE_FIELD_LIMIT: u64 = 1 << 20;

/// Roots of `g'` in its splitting field, with multiplicities found by
/// repeated synthetic division, and their critical values.
#[derive(Debug, Clone)]
pub struct CriticalPoints {
    pub field: FieldSpec,
    pub roots: Vec<(FieldElement, usize)>,
    pub values: Vec<FieldElement>,
}

/// Splitting-field enumeration cross-check for [`turnwald_check`]: finds
/// the smallest `k` such that `g'` splits over `F_{q^k}` by brute-force
/// evaluation at every element, then compares critical values directly.
pub fn turnwald_check_by_roots(g: &Polynomial) -> Result<(TurnwaldVerdict, CriticalPoints)> {
    let deg = g.degree().unwrap_or(0);
    if deg < 2 {
        return Err(Error::DegreeTooSmall(deg));
    }
    let spec = g.spec();
    let p = spec.p() as usize;
    let gp = g.derivative();
    let separable_ok = !gp.is_zero() && !deg.is_multiple_of(p);
    if gp.is_zero() {
        return Ok((
            TurnwaldVerdict {
                separable_ok,
                simple_root_ok: false,
                distinct_critical_values_ok: false,
                verdict: TurnwaldOutcome::Inapplicable,
                evidence: vec!["g' = 0".into()],
            },
            CriticalPoints {
                field: spec.clone(),
                roots: Vec::new(),
                values: Vec::new(),
            },
        ));
    }
    let target_deg = gp.degree().unwrap();
    let mut k = 1usize;
    let (field, roots, gl) = loop {
        let field = if k == 1 {
            spec.clone()
        } else {
            FieldSpec::create(spec.p(), spec.m() * k, None, 0)?
        };
        if field.order() > ORACLE_FIELD_LIMIT {
            return Err(Error::OutOfRange(format!(
                "splitting field beyond {ORACLE_FIELD_LIMIT} elements"
            )));
        }
        let emb = embed_field(spec, &field)?;
        let gpl = emb.apply_poly(&gp)?;
        let mut roots = Vec::new();
        let mut total = 0;
        for x in field.elements() {
            let m = root_multiplicity(&gpl, &x)?;
            if m > 0 {
                total += m;
                roots.push((x, m));
            }
        }
        if total == target_deg {
            break (field, roots, emb.apply_poly(g)?);
        }
        k += 1;
    };
    let values: Vec<FieldElement> = roots
        .iter()
        .map(|(x, _)| gl.eval(x))
        .collect::<Result<_>>()?;
    let simple_root_ok = roots.iter().any(|(_, m)| *m == 1);
    let distinct: HashSet<u64> = values.iter().map(FieldElement::index).collect();
    let distinct_critical_values_ok = distinct.len() == values.len();
    let verdict = outcome(separable_ok, simple_root_ok, distinct_critical_values_ok);
    let evidence = vec![
        format!("splitting field of g': {}", field.canonical()),
        format!(
            "roots with multiplicity: {}",
            roots
                .iter()
                .map(|(x, m)| format!("{x}^{m}"))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    ];
    Ok((
        TurnwaldVerdict {
            separable_ok,
            simple_root_ok,
            distinct_critical_values_ok,
            verdict,
            evidence,
        },
        CriticalPoints {
            field,
            roots,
            values,
        },
    ))
}

fn root_multiplicity(f: &Polynomial, x: &FieldElement) -> Result<usize> {
    let lin = Polynomial::x(f.spec()).sub_constant(x)?;
    let mut cur = f.clone();
    let mut m = 0;
    while !cur.is_zero() {
        let (q, r) = cur.divrem(&lin)?;
        if !r.is_zero() {
            break;
        }
        cur = q;
        m += 1;
    }
    Ok(m)
}

/// `GF(q)` with its default modulus, for a prime power `q`.
pub fn field_for_order(q: u64) -> Result<FieldSpec> {
    let ps = prime_factors(q);
    if q < 2 || ps.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = ps[0];
    let mut m = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        m += 1;
    }
    let p = u32::try_from(p).map_err(|_| Error::CharacteristicTooLarge(p))?;
    FieldSpec::create(p, m, None, 0)
}

#[derive(Debug, Clone)]
pub struct FamilyPolynomial {
    pub name: String,
    pub polynomial: Polynomial,
    /// The family member is known to be universal.
    pub expected_universal: bool,
    /// Observed, unproven guess for the smallest universal d.
    pub d_guess: Option<usize>,
    pub notes: Vec<String>,
}

/// `X^{q+j} - jX` over the field of `spec`, `q = |spec|`.
pub fn family_xqj(spec: &FieldSpec, j: u64) -> Result<FamilyPolynomial> {
    let p = spec.p() as u64;
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if j < 2 || j.is_multiple_of(p) {
        return Err(Error::InvalidJ(j));
    }
    let q = spec.order();
    let jc = spec.from_int((j % p) as i64);
    let poly = &Polynomial::x(spec).pow(q + j)
        - &Polynomial::monomial(&jc, 1);
    let mut notes = vec![format!("d = j + 1 = {} observed experimentally, unproven", j + 1)];
    let turnwald_route = j % p != 1;
    if !turnwald_route {
        notes.push(format!(
            "j = {j} is 1 mod {p}: jX = X and g' = X^{{q+j-1}} - 1 is a p-th power, \
             so the simple-root argument does not apply"
        ));
    }
    Ok(FamilyPolynomial {
        name: format!("X^(q+{j}) - {j}X"),
        polynomial: poly,
        expected_universal: turnwald_route,
        d_guess: Some(j as usize + 1),
        notes,
    })
}

/// `X^q + X^2` over the field of `spec`.
pub fn xq_plus_x2(spec: &FieldSpec) -> Result<FamilyPolynomial> {
    if spec.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let q = spec.order();
    let poly = &Polynomial::x(spec).pow(q) + &Polynomial::x(spec).pow(2);
    Ok(FamilyPolynomial {
        name: "X^q + X^2".into(),
        polynomial: poly,
        expected_universal: q >= 8,
        d_guess: Some(2),
        notes: vec![
            "arithmetic and geometric monodromy are both S_q".into(),
            "universal for q >= 8; 2-universality conjectured".into(),
        ],
    })
}
