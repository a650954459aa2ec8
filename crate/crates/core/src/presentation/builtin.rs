use super::{parse_presentation, Poly, Presentation, Relation};
use crate::error::{Error, Result};
use crate::scalar::Gauss;

/// Names accepted by [`builtin_presentation`], besides `o_n(<n>)`.
pub const BUILTIN_NAMES: &[&str] = &[
    "dual_m1_hahn",
    "dual_m1_hahn_variant",
    "sd2",
    "osp12",
    "commutant_closure",
    "commutant_closure_variant",
    "cg_kappa",
    "cg_kappa_variant",
];

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "dual_m1_hahn" => include_str!("data/dual_m1_hahn.pres"),
        "dual_m1_hahn_variant" => include_str!("data/dual_m1_hahn_variant.pres"),
        "sd2" => include_str!("data/sd2.pres"),
        "osp12" => include_str!("data/osp12.pres"),
        "commutant_closure" => include_str!("data/commutant_closure.pres"),
        "commutant_closure_variant" => include_str!("data/commutant_closure_variant.pres"),
        "cg_kappa" => include_str!("data/cg_kappa.pres"),
        "cg_kappa_variant" => include_str!("data/cg_kappa_variant.pres"),
        _ => return None,
    })
}

/// Looks up a builtin presentation. `o_n(4)` style names instantiate [`o_n`].
pub fn builtin_presentation(name: &str) -> Result<Presentation> {
    if let Some(n) = name.strip_prefix("o_n(").and_then(|r| r.strip_suffix(')')) {
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::UnknownPresentation(name.to_string()))?;
        return o_n(n);
    }
    let text = source(name).ok_or_else(|| Error::UnknownPresentation(name.to_string()))?;
    parse_presentation(text)
}

/// Generator name of `ℓ_{ab}` for `a < b` (1-based).
pub fn o_n_generator(a: usize, b: usize) -> String {
    format!("l{a}_{b}")
}

/// `o(n)` on generators `ℓ_{μν}`, `μ < ν`, with
/// `[ℓ_{μν}, ℓ_{ρσ}] = −i(δ_{νρ}ℓ_{μσ} − δ_{νσ}ℓ_{μρ} − δ_{μρ}ℓ_{νσ} + δ_{μσ}ℓ_{νρ})`
/// for every unordered pair of distinct generators.
pub fn o_n(n: usize) -> Result<Presentation> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("o(n) needs n >= 2, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
    // ℓ_{ab} with antisymmetry, ℓ_{aa} = 0
    let ell = |a: usize, b: usize| -> Poly {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Poly::symbol(&o_n_generator(a, b)),
            std::cmp::Ordering::Greater => Poly::symbol(&o_n_generator(b, a)).scale(&Gauss::from(-1)),
            std::cmp::Ordering::Equal => Poly::zero(),
        }
    };
    let delta = |x: usize, y: usize| if x == y { Gauss::from(1) } else { Gauss::from(0) };
    let mut relations = Vec::new();
    for (k, &(mu, nu)) in pairs.iter().enumerate() {
        for &(rho, sigma) in &pairs[k + 1..] {
            let rhs = ell(mu, sigma)
                .scale(&delta(nu, rho))
                .sub(&ell(mu, rho).scale(&delta(nu, sigma)))
                .sub(&ell(nu, sigma).scale(&delta(mu, rho)))
                .add(&ell(nu, rho).scale(&delta(mu, sigma)))
                .scale(&-Gauss::i());
            let lhs = ell(mu, nu).commutator(&ell(rho, sigma));
            let (g1, g2) = (o_n_generator(mu, nu), o_n_generator(rho, sigma));
            relations.push(Relation {
                tag: format!("[{g1},{g2}]"),
                display: format!("[{g1},{g2}] = {}", rhs.to_text()),
                poly: lhs.sub(&rhs),
            });
        }
    }
    Ok(Presentation {
        name: format!("o{n}"),
        generators: pairs.iter().map(|&(a, b)| o_n_generator(a, b)).collect(),
        centrals: vec![],
        params: vec![],
        relations,
    })
}
