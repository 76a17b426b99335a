use crate::error::{Error, Result};
use crate::seqcore::table::SeqTable;
use crate::seqcore::verdict::{log_ladder, stabilization, PropertyVerdict, Witness};

fn bounded_gap(n: usize, gaps: impl Iterator<Item = f64>, offset: usize) -> PropertyVerdict {
    let mut run: Vec<(f64, usize)> = Vec::with_capacity(n);
    for (i, g) in gaps.enumerate() {
        match run.last() {
            Some(&(best, j)) if best >= g => run.push((best, j)),
            _ => run.push((g, i + offset)),
        }
    }
    let at = |k: usize| run[k - 1];
    let status = stabilization(log_ladder(n).map(|k| at(k).0));
    let (c, p) = at(n);
    PropertyVerdict::new(status, n)
        .with_constant(c)
        .with_witness(Witness::Index(p))
}

fn same_truncation(a: &SeqTable, b: &SeqTable) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::TruncationMismatch { a: a.n(), b: b.n() });
    }
    Ok(())
}

/// `m ≃ l`: `log m_p - log l_p` bounded. Constant is `max |difference|`.
pub fn quotient_equivalent(a: &SeqTable, b: &SeqTable) -> Result<PropertyVerdict> {
    same_truncation(a, b)?;
    let gaps = a.logm().iter().zip(b.logm()).map(|(x, y)| (x - y).abs());
    Ok(bounded_gap(a.n(), gaps, 0))
}

/// `M ≈ L`: `(log M_p - log L_p) / p` bounded over `p >= 1`.
pub fn sequence_equivalent(a: &SeqTable, b: &SeqTable) -> Result<PropertyVerdict> {
    same_truncation(a, b)?;
    let (x, y) = (a.log_big_m(), b.log_big_m());
    let gaps = (1..=a.n()).map(|p| (x[p] - y[p]).abs() / p as f64);
    Ok(bounded_gap(a.n(), gaps, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::spec::QuotientSpec;
    use crate::seqcore::table::materialize;
    use crate::seqcore::verdict::Status;

    fn tab(s: QuotientSpec, n: usize) -> SeqTable {
        materialize(&s, n).unwrap()
    }

    #[test]
    fn constant_ratio_three() {
        let a = tab(QuotientSpec::gevrey(1.0), 10_000);
        let b = tab(
            QuotientSpec::expression(|p| ((p + 1) as f64).ln() + 3f64.ln()),
            10_000,
        );
        let v = quotient_equivalent(&a, &b).unwrap();
        assert_eq!(v.status, Status::Holds);
        assert!((v.constant.unwrap() - 3f64.ln()).abs() < 1e-12);
        assert!(sequence_equivalent(&a, &b).unwrap().holds());
    }

    #[test]
    fn different_orders_fail() {
        let a = tab(QuotientSpec::gevrey(1.0), 10_000);
        let b = tab(QuotientSpec::gevrey(2.0), 10_000);
        assert_eq!(quotient_equivalent(&a, &b).unwrap().status, Status::Fails);
        let c = tab(QuotientSpec::gevrey(1.5), 10_000);
        assert_eq!(sequence_equivalent(&a, &c).unwrap().status, Status::Fails);
        let d = tab(QuotientSpec::gevrey_log(1.0, 1.0), 10_000);
        assert_eq!(quotient_equivalent(&a, &d).unwrap().status, Status::Fails);
    }

    #[test]
    fn geometric_factor() {
        let a = tab(QuotientSpec::gevrey(1.0), 10_000);
        let b = a.shift_quotients(2f64.ln());
        let v = sequence_equivalent(&a, &b).unwrap();
        assert!(v.holds());
        assert!((v.constant.unwrap() - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn self_equivalence() {
        let a = tab(QuotientSpec::AlternatingHarmonic, 1000);
        let v = quotient_equivalent(&a, &a).unwrap();
        assert!(v.holds());
        assert_eq!(v.constant, Some(0.0));
    }

    #[test]
    fn mismatch_errors() {
        let a = tab(QuotientSpec::gevrey(1.0), 100);
        let b = tab(QuotientSpec::gevrey(1.0), 200);
        assert!(quotient_equivalent(&a, &b).is_err());
        assert!(sequence_equivalent(&a, &b).is_err());
    }
}
