use std::fmt::Write as _;

use crate::equivariant::{verify_essential_cycle, EssentialCycleCertificate};

/// How certificates were combined, by position in the certificate list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Composition {
    /// Join of two certificates: dimension `m₁ + m₂ + 1`.
    Join(usize, usize),
    /// Union with a ray: dimension `m + 1`.
    Ray(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateLine {
    pub name: String,
    pub m: Option<usize>,
    pub radius: Option<usize>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PobdimReport {
    pub certificates: Vec<CertificateLine>,
    /// Composition, resulting dimension and implied bound.
    pub compositions: Vec<(Composition, Option<usize>)>,
    /// Largest `m + 1` over verified certificates and valid compositions.
    pub bound: Option<usize>,
}

/// Arithmetic summary of what a set of certificates implies. Every bound holds only at
/// the certified radii; nothing here speaks to all radii at once.
pub fn pobdim_report(certs: &[(String, EssentialCycleCertificate)], compositions: &[Composition]) -> PobdimReport {
    let certificates: Vec<CertificateLine> = certs
        .iter()
        .map(|(name, c)| {
            let r = verify_essential_cycle(c);
            CertificateLine { name: name.clone(), m: r.m, radius: c.target.as_ref().map(|t| t.radius), verified: r.passed() }
        })
        .collect();
    let verified_m = |i: usize| certificates.get(i).filter(|c| c.verified).and_then(|c| c.m);
    let compositions: Vec<(Composition, Option<usize>)> = compositions
        .iter()
        .map(|&comp| {
            let m = match comp {
                Composition::Join(i, j) => verified_m(i).zip(verified_m(j)).map(|(a, b)| a + b + 1),
                Composition::Ray(i) => verified_m(i).map(|a| a + 1),
            };
            (comp, m)
        })
        .collect();
    let bound = certificates
        .iter()
        .filter(|c| c.verified)
        .filter_map(|c| c.m)
        .chain(compositions.iter().filter_map(|(_, m)| *m))
        .map(|m| m + 1)
        .max();
    PobdimReport { certificates, compositions, bound }
}

impl PobdimReport {
    pub fn to_text(&self) -> String {
        if self.certificates.is_empty() {
            return "report: no certificates\n".to_string();
        }
        let mut out = String::new();
        let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        for (i, c) in self.certificates.iter().enumerate() {
            let _ = writeln!(
                out,
                "certificate {}: {} m={} radius={} verified={}",
                i + 1,
                c.name,
                show(c.m),
                show(c.radius),
                if c.verified { "yes" } else { "no" }
            );
        }
        for (comp, m) in &self.compositions {
            let what = match comp {
                Composition::Join(i, j) => format!("join {} {}", i + 1, j + 1),
                Composition::Ray(i) => format!("ray {}", i + 1),
            };
            match m {
                Some(m) => {
                    let _ = writeln!(out, "{what}: m={m} bound={}", m + 1);
                }
                None => {
                    let _ = writeln!(out, "{what}: unavailable (an input does not verify)");
                }
            }
        }
        match self.bound {
            Some(b) => {
                let radius = self.certificates.iter().filter(|c| c.verified).filter_map(|c| c.radius).max();
                let at = radius.map_or("certified radii".to_string(), |r| format!("certified radii up to {r}"));
                let _ = writeln!(out, "bound: pobdim >= {b} at {at}");
            }
            None => {
                let _ = writeln!(out, "bound: none (no certificate verifies)");
            }
        }
        out.push_str("scope: radius-limited certification\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::cross_polytope_certificate;

    #[test]
    fn empty_list() {
        let r = pobdim_report(&[], &[]);
        assert_eq!(r.to_text(), "report: no certificates\n");
        assert_eq!(r.bound, None);
    }

    #[test]
    fn single_certificate_and_join() {
        let a = ("circle".to_string(), cross_polytope_certificate(1));
        let b = ("sphere".to_string(), cross_polytope_certificate(2));
        let r = pobdim_report(std::slice::from_ref(&a), &[]);
        assert_eq!(r.bound, Some(2));
        let r = pobdim_report(&[a, b], &[Composition::Join(0, 1), Composition::Ray(1)]);
        assert_eq!(r.compositions[0].1, Some(4));
        assert_eq!(r.compositions[1].1, Some(3));
        assert_eq!(r.bound, Some(5));
        assert!(r.to_text().contains("join 1 2: m=4 bound=5"));
    }

    #[test]
    fn unverified_certificates_do_not_count() {
        let mut c = cross_polytope_certificate(1);
        c.involution = vec![0, 1, 2, 3];
        let r = pobdim_report(&[("fixed".into(), c)], &[Composition::Ray(0)]);
        assert_eq!(r.bound, None);
        assert!(r.to_text().contains("ray 1: unavailable"));
    }
}
