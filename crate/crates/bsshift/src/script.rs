//! Emission of Singular verification scripts.
//!
//! The script declares a local ring, assigns every deformation parameter an
//! exact rational value, spells out `f = f₁ + Σ uⱼhⱼ`, and calls
//! `bernstein(f)`. Running it is an external verification step; the output is
//! never parsed here. Emission is byte-deterministic.

use crate::ratio::{fmt_rat, Rat};
use crate::singularity::{Kind, Normalization, SingularityClass};

fn var_names(n: usize) -> Vec<String> {
    match n {
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("x({})", i)).collect(),
    }
}

fn monomial(vars: &[String], exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(exps) {
        if e == 1 {
            parts.push(v.clone());
        } else if e > 1 {
            parts.push(format!("{}^{}", v, e));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn f1_terms(s: &SingularityClass, vars: &[String]) -> Vec<String> {
    let unit = s.normalization == Normalization::Unit;
    let coeff = |e: u32, mono: String| {
        if unit {
            mono
        } else {
            format!("1/{}*{}", e, mono)
        }
    };
    match &s.kind {
        Kind::Bp(es) => es
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let mut exps = vec![0u32; s.n];
                exps[i] = e;
                coeff(e, monomial(vars, &exps))
            })
            .collect(),
        Kind::Chain2(a, b) => vec![
            coeff(*a, monomial(vars, &[*a, 0])),
            coeff(*b, monomial(vars, &[1, *b])),
        ],
        Kind::Loop2(a, b) => vec![
            coeff(*a, monomial(vars, &[*a, 1])),
            coeff(*b, monomial(vars, &[1, *b])),
        ],
        Kind::Loop3(a, b, c) => vec![
            coeff(*a, monomial(vars, &[*a, 1, 0])),
            coeff(*b, monomial(vars, &[0, *b, 1])),
            coeff(*c, monomial(vars, &[1, 0, *c])),
        ],
    }
}

/// Script text for `f = f₁ + Σ uⱼhⱼ` at the given parameter values
/// (one value per J entry; zeros are written out explicitly).
pub fn emit_verification_script(s: &SingularityClass, values: &[Rat]) -> String {
    let js = s.deformation_monomials();
    assert_eq!(values.len(), js.len(), "one value per J entry");
    let vars = var_names(s.n);
    let ring_vars = vars.join(",");
    let mut out = String::new();
    out.push_str("LIB \"gmssing.lib\";\n");
    out.push_str(&format!("ring R=0,({}),ds;\n", ring_vars));
    for (e, v) in js.iter().zip(values) {
        out.push_str(&format!("poly u_{}={};\n", e.j, fmt_rat(v)));
    }
    let mut terms = f1_terms(s, &vars);
    for e in js {
        terms.push(format!("u_{}*{}", e.j, monomial(&vars, &e.exponent)));
    }
    out.push_str(&format!("poly f={};\n", terms.join("+")));
    out.push_str("bernstein(f);\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use num::Zero;

    #[test]
    fn script_shape_for_plain_f1() {
        let s = SingularityClass::bp(&[3, 3], crate::Normalization::Unit).unwrap();
        let script = emit_verification_script(&s, &[]);
        assert_eq!(
            script,
            "LIB \"gmssing.lib\";\nring R=0,(x,y),ds;\npoly f=x^3+y^3;\nbernstein(f);\n"
        );
    }

    #[test]
    fn script_is_deterministic_and_lists_all_parameters() {
        let s = SingularityClass::bp(&[8, 7], crate::Normalization::Unit).unwrap();
        let mut u = vec![Rat::zero(); 10];
        u[0] = rat(2, 3);
        let a = emit_verification_script(&s, &u);
        let b = emit_verification_script(&s, &u);
        assert_eq!(a, b);
        assert!(a.contains("poly u_1=2/3;\n"));
        assert!(a.contains("poly u_10=0;\n"));
        assert!(a.starts_with("LIB \"gmssing.lib\";\nring R=0,(x,y),ds;\n"));
        assert!(a.contains("poly f=x^8+y^7+u_1*x^6*y^2+"));
        assert!(a.ends_with("bernstein(f);\n"));
    }

    #[test]
    fn script_reciprocal_loop3() {
        let s = SingularityClass::loop3(4, 4, 3, crate::Normalization::Reciprocal).unwrap();
        let u = vec![Rat::zero(); 17];
        let script = emit_verification_script(&s, &u);
        assert!(script.contains("ring R=0,(x,y,z),ds;"));
        assert!(script.contains("poly f=1/4*x^4*y+1/4*y^4*z+1/3*x*z^3+"));
    }
}
