use std::collections::BTreeMap;

use crate::arrangement::{close_under_intersection, Arrangement, Geometry};
use crate::error::{Error, Result};
use crate::geometry::{rank, rnc_points, span_points, GaussRat, ProjSubspace};
use crate::models::{finish_building, linear_seed, projective_ambient, Model, ModelDescriptor};
use crate::properties::{KnownSpaces, Tri, PROJECTIVE_SPACE};

/// `M̄₀,ₙ` with the real structure twisted by an involution of the marks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliSpec {
    pub n: usize,
    /// 0-based images of the marks.
    pub sigma: Vec<usize>,
    /// Curve parameters of the non-distinguished marks, in increasing mark order.
    pub params: Option<Vec<GaussRat>>,
}

impl ModuliSpec {
    pub fn new(n: usize, sigma: &str) -> Result<Self> {
        Ok(ModuliSpec { n, sigma: parse_sigma(n, sigma)?, params: None })
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.sigma[i] == i).collect()
    }

    /// Cycle notation, 1-based, fixed points omitted; `id` for the identity.
    pub fn sigma_string(&self) -> String {
        let cycles: Vec<String> =
            (0..self.n).filter(|&i| self.sigma[i] > i).map(|i| format!("({} {})", i + 1, self.sigma[i] + 1)).collect();
        if cycles.is_empty() {
            "id".into()
        } else {
            cycles.concat()
        }
    }
}

/// Parses `id` or cycle notation such as `(1 2)(3 4)` (commas also accepted) into an
/// involution of `{0..n}`.
pub fn parse_sigma(n: usize, text: &str) -> Result<Vec<usize>> {
    let mut sigma: Vec<usize> = (0..n).collect();
    let t = text.trim();
    if t == "id" || t.is_empty() {
        return Ok(sigma);
    }
    let mut seen = vec![false; n];
    let mut rest = t;
    while !rest.is_empty() {
        let (body, tail) = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| Error::Input(format!("malformed permutation {text:?}")))?;
        let cycle = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| match s.parse::<usize>() {
                Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                _ => Err(Error::Input(format!("bad mark {s:?} in {text:?} (marks are 1..={n})"))),
            })
            .collect::<Result<Vec<_>>>()?;
        for &x in &cycle {
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::Input(format!("mark {} repeated in {text:?}", x + 1)));
            }
        }
        match cycle[..] {
            [] | [_] => {}
            [a, b] => {
                sigma[a] = b;
                sigma[b] = a;
            }
            _ => return Err(Error::Input(format!("{text:?} is not an involution (σ² ≠ id)"))),
        }
        rest = tail.trim_start();
    }
    Ok(sigma)
}

/// Curve parameters for the marks other than `distinguished`: real marks get
/// `0, 1, 2, …`, the k-th swapped pair gets `±k·i`.
fn default_params(sigma: &[usize], others: &[usize]) -> Vec<GaussRat> {
    let (mut real, mut pair) = (0i64, 0i64);
    let mut out = vec![GaussRat::zero(); others.len()];
    for (pos, &m) in others.iter().enumerate() {
        if sigma[m] == m {
            out[pos] = GaussRat::from_int(real);
            real += 1;
        } else if sigma[m] > m {
            pair += 1;
            out[pos] = GaussRat::complex(0, pair);
            let partner = others.iter().position(|&x| x == sigma[m]).expect("partner is not distinguished");
            out[partner] = GaussRat::complex(0, -pair);
        }
    }
    out
}

fn mark_label(marks: &[usize]) -> String {
    let items: Vec<String> = marks.iter().map(|m| (m + 1).to_string()).collect();
    format!("<{}>", items.join(","))
}

/// Kapranov's model: `n − 1` general points in `P^{n−3}` (the marks other than a
/// σ-fixed distinguished one), blown up along the spans of at most `n − 4` of them in
/// increasing dimension.
pub fn build_moduli(spec: &ModuliSpec, known: &KnownSpaces) -> Result<Model> {
    let n = spec.n;
    if n < 3 {
        return Err(Error::Input(format!("n = {n}: need at least 3 marks")));
    }
    if spec.sigma.len() != n || (0..n).any(|i| spec.sigma.get(spec.sigma[i]) != Some(&i)) {
        return Err(Error::Input("σ must be an involution of the marks".into()));
    }
    let flags = known.get(PROJECTIVE_SPACE)?;
    let dim = n - 3;
    let mut parameters = BTreeMap::new();
    parameters.insert("n".into(), n.to_string());
    parameters.insert("sigma".into(), spec.sigma_string());
    let descriptor = |parameters| ModelDescriptor {
        kind: "moduli".into(),
        parameters,
        axioms: [(PROJECTIVE_SPACE.to_string(), flags)].into_iter().collect(),
    };

    if n <= 4 {
        // a point, and P¹ with its standard real structure for every σ
        let arr = Arrangement::from_parts(projective_ambient(dim, flags), vec![], vec![], vec![], vec![], Tri::Yes)?;
        return Ok(Model { descriptor: descriptor(parameters), arrangement: arr });
    }

    let distinguished = *spec
        .fixed_points()
        .last()
        .ok_or_else(|| Error::Input(format!("σ = {} has no fixed mark", spec.sigma_string())))?;
    let others: Vec<usize> = (0..n).filter(|&m| m != distinguished).collect();
    let params = match &spec.params {
        None => default_params(&spec.sigma, &others),
        Some(p) => {
            if p.len() != others.len() {
                return Err(Error::Input(format!("expected {} curve parameters, got {}", others.len(), p.len())));
            }
            for (pos, &m) in others.iter().enumerate() {
                let partner = others.iter().position(|&x| x == spec.sigma[m]).expect("σ preserves the others");
                if p[partner] != p[pos].conj() {
                    return Err(Error::Input(format!(
                        "parameter of mark {} must be the conjugate of that of mark {}",
                        m + 1,
                        spec.sigma[m] + 1
                    )));
                }
            }
            p.clone()
        }
    };
    let points = rnc_points(dim, &params)?;
    check_general_position(&points)?;
    parameters.insert("distinguished".into(), (distinguished + 1).to_string());
    parameters.insert("parameters".into(), params.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));

    let mut generators = Vec::new();
    for size in 1..=n - 4 {
        for subset in subsets(others.len(), size) {
            let span = span_points(&subset.iter().map(|&i| points[i].clone()).collect::<Vec<_>>())?;
            let marks: Vec<usize> = subset.iter().map(|&i| others[i]).collect();
            generators.push((mark_label(&marks), Geometry::Subspace(span)));
        }
    }
    let count = generators.len();
    let mut arr = close_under_intersection(projective_ambient(dim, flags), generators, |g, invariant| {
        let Geometry::Subspace(s) = g else {
            return Err(Error::Invariant("linear arrangement produced a non-linear stratum".into()));
        };
        Ok(linear_seed(s.proj_dim(), invariant, flags))
    })?;
    finish_building(&mut arr, (0..count).collect(), false)?;
    arr.stretched = Tri::Yes;
    Ok(Model { descriptor: descriptor(parameters), arrangement: arr })
}

/// Any `N + 1` of the points in `P^N` must be independent.
fn check_general_position(points: &[ProjSubspace]) -> Result<()> {
    let Some(first) = points.first() else { return Ok(()) };
    let size = (first.ambient_dim() + 1).min(points.len());
    for subset in subsets(points.len(), size) {
        let rows: Vec<_> = subset.iter().map(|&i| points[i].basis()[0].clone()).collect();
        if rank(rows) != size {
            return Err(Error::Input("curve parameters do not give points in general position".into()));
        }
    }
    Ok(())
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_parsing() {
        assert_eq!(parse_sigma(4, "id").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_sigma(4, "(1 2)").unwrap(), vec![1, 0, 2, 3]);
        assert_eq!(parse_sigma(4, "(1,2)(3 4)").unwrap(), vec![1, 0, 3, 2]);
        assert_eq!(parse_sigma(4, "(3)").unwrap(), vec![0, 1, 2, 3]);
        assert!(parse_sigma(4, "(1 2 3)").is_err());
        assert!(parse_sigma(4, "(1 2)(2 3)").is_err());
        assert!(parse_sigma(4, "(1 5)").is_err());
        assert!(parse_sigma(4, "1 2").is_err());
        let spec = ModuliSpec::new(5, "(2 1)(4,3)").unwrap();
        assert_eq!(spec.sigma_string(), "(1 2)(3 4)");
    }

    #[test]
    fn point_placement() {
        let known = KnownSpaces::default();
        let m = build_moduli(&ModuliSpec::new(5, "id").unwrap(), &known).unwrap();
        assert_eq!(m.arrangement.len(), 4);
        assert!(m.arrangement.strata.iter().all(|s| s.real_status.has_real_locus()));

        let m = build_moduli(&ModuliSpec::new(5, "(1 2)").unwrap(), &known).unwrap();
        let real = m.arrangement.strata.iter().filter(|s| s.real_status.has_real_locus()).count();
        assert_eq!(real, 2);
        assert_eq!(m.arrangement.building.len(), 3);

        let m = build_moduli(&ModuliSpec::new(6, "id").unwrap(), &known).unwrap();
        let count = |d| m.arrangement.strata.iter().filter(|s| s.dim_c == d).count();
        assert_eq!((count(0), count(1)), (5, 10));
    }

    #[test]
    fn distinguished_point_must_be_fixed() {
        let known = KnownSpaces::default();
        assert!(build_moduli(&ModuliSpec::new(6, "(1 2)(3 4)(5 6)").unwrap(), &known).is_err());
        // small n is handled directly for every σ
        assert!(build_moduli(&ModuliSpec::new(4, "(1 2)(3 4)").unwrap(), &known).is_ok());
    }

    #[test]
    fn custom_parameters_are_checked() {
        let known = KnownSpaces::default();
        let mut spec = ModuliSpec::new(5, "(1 2)").unwrap();
        let p = |s: &str| s.parse::<GaussRat>().unwrap();
        spec.params = Some(vec![p("1+i"), p("1-i"), p("3"), p("-2")]);
        assert!(build_moduli(&spec, &known).is_ok());
        spec.params = Some(vec![p("1+i"), p("1+i"), p("3"), p("-2")]);
        assert!(build_moduli(&spec, &known).is_err());
        spec.params = Some(vec![p("i"), p("-i"), p("3"), p("3")]);
        assert!(build_moduli(&spec, &known).is_err());
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(2, 3).len(), 0);
    }
}
