use crate::error::{Error, Result};
use crate::hamming::{binomial, check_width, LevelIter, Word};

/// Upper bound on a family of `k`-subsets of an `n`-set whose members pairwise
/// share at least `t` elements: `C(n-t, k-t)`, valid for `n >= (k-t+1)(t+1)`.
pub fn ekr_bound(n: u32, k: u32, t: u32) -> Result<u64> {
    if t < 1 || t > k || k > n {
        return Err(Error::usage(format!(
            "EKR parameters must satisfy 1 <= t <= k <= n, got n={n} k={k} t={t}"
        )));
    }
    let required = (k - t + 1) * (t + 1);
    if n < required {
        return Err(Error::EkrInapplicable { n, k, t, required });
    }
    Ok(binomial((n - t) as u64, (k - t) as u64))
}

/// Every weight-`k` word with position 0 set.
pub fn star_family(width: u32, k: u32) -> Result<Vec<Word>> {
    check_width(width)?;
    if k == 0 || k > width {
        return Err(Error::usage(format!(
            "star family needs 1 <= k <= {width}, got {k}"
        )));
    }
    Ok(LevelIter::new(width, k).filter(|w| w.bit(0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_level_graph;

    #[test]
    fn reference_values() {
        assert_eq!(ekr_bound(16, 4, 1).unwrap(), 455);
        assert_eq!(ekr_bound(16, 6, 3).unwrap(), 286);
        assert_eq!(ekr_bound(8, 3, 1).unwrap(), 21);
        assert_eq!(ekr_bound(8, 2, 1).unwrap(), 7);
    }

    #[test]
    fn precondition_is_enforced() {
        match ekr_bound(8, 6, 3) {
            Err(Error::EkrInapplicable { required, .. }) => assert_eq!(required, 16),
            other => panic!("expected EKR inapplicable, got {other:?}"),
        }
        assert!(matches!(ekr_bound(16, 4, 0), Err(Error::Usage(_))));
        assert!(matches!(ekr_bound(4, 6, 1), Err(Error::Usage(_))));
    }

    #[test]
    fn star_sizes() {
        assert_eq!(star_family(16, 4).unwrap().len(), 455);
        assert_eq!(star_family(16, 6).unwrap().len(), 3003);
        assert!(star_family(16, 0).is_err());
    }

    #[test]
    fn star_is_independent_on_level_four() {
        let g = build_level_graph(16, 4).unwrap();
        let idx: Vec<usize> = star_family(16, 4)
            .unwrap()
            .into_iter()
            .map(|w| g.index_of(w).unwrap())
            .collect();
        assert!(g.adjacency().is_independent(&idx));
    }
}
