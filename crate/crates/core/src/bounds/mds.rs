//! Known values of m(k, q), the maximum length of a k-dimensional MDS code.

use serde::Serialize;

use crate::gf::prime_power;

/// m(k, q) as far as it is settled: `lo ≤ m(k, q) ≤ hi`, with `hi = None`
/// meaning unbounded (only at k = 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MdsValue {
    pub lo: u64,
    pub hi: Option<u64>,
    pub source: &'static str,
}

impl MdsValue {
    fn exact(v: u64, source: &'static str) -> Self {
        MdsValue {
            lo: v,
            hi: Some(v),
            source,
        }
    }

    pub fn exact_value(&self) -> Option<u64> {
        (self.hi == Some(self.lo)).then_some(self.lo)
    }
}

fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Maximum length of an MDS code of dimension k over GF(q), where known.
///
/// `q` must be a prime power; callers validate it.
pub fn m_mds(k: u64, q: u64) -> MdsValue {
    let (p, h) = prime_power(q).expect("m_mds called with a prime power");
    match k {
        0 | 1 => {
            return MdsValue {
                lo: 1,
                hi: None,
                source: "trivial bounds part 2",
            }
        }
        2 => return MdsValue::exact(q + 1, "bounds on MDS codes part 1"),
        _ => {}
    }
    if k >= q {
        return MdsValue::exact(k + 1, "Bush");
    }
    if k == 3 {
        return if q.is_multiple_of(2) {
            MdsValue::exact(q + 2, "bounds on MDS codes part 2")
        } else {
            MdsValue::exact(q + 1, "bounds on MDS codes part 2")
        };
    }
    if k == 4 || k == 5 {
        return MdsValue::exact(q + 1, "bounds on MDS codes part 1");
    }
    if k <= p {
        return MdsValue::exact(q + 1, "bounds on MDS codes part 4");
    }
    if h > 1 && k <= 2 * p - 2 {
        return MdsValue::exact(q + 1, "bounds on MDS codes part 5");
    }
    if h % 2 == 0 {
        // k ≤ √q − √q/p + 2 with √q = p^{h/2}
        let r = isqrt(q);
        if k <= r - r / p + 2 {
            return MdsValue::exact(q + 1, "bounds on MDS codes part 6");
        }
    }
    // Dual of a hyperoval code gives q+2 at k = q−1 for even q.
    let lo = if q.is_multiple_of(2) && k == q - 1 { q + 2 } else { q + 1 };
    MdsValue {
        lo,
        hi: Some(q + k - 3),
        source: "bounds on MDS codes part 3",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(m_mds(3, 4).exact_value(), Some(6));
        assert_eq!(m_mds(4, 5).exact_value(), Some(6));
        assert_eq!(m_mds(7, 3).exact_value(), Some(8));
        assert_eq!(m_mds(1, 7).hi, None);
        assert_eq!(m_mds(2, 9).exact_value(), Some(10));
        assert_eq!(m_mds(3, 9).exact_value(), Some(10));
    }

    #[test]
    fn open_cases_are_intervals() {
        // q = 8: p = 2, so parts 4 to 6 do not reach k = 6
        let v = m_mds(6, 8);
        assert_eq!((v.lo, v.hi), (9, Some(11)));
        let v = m_mds(7, 8);
        assert_eq!((v.lo, v.hi), (10, Some(12)));
        // q = 49: part 5 covers k ≤ 2·7 − 2 = 12
        assert_eq!(m_mds(12, 49).exact_value(), Some(50));
        assert!(m_mds(13, 49).exact_value().is_none());
        // q = 64: part 6 covers k ≤ 8 − 4 + 2 = 6, part 5 only k ≤ 2
        assert_eq!(m_mds(6, 64).exact_value(), Some(65));
        assert!(m_mds(7, 64).exact_value().is_none());
        // q = 11 prime: part 4 covers k ≤ 11, then Bush
        for k in 2..=20 {
            assert!(m_mds(k, 11).exact_value().is_some(), "k={k}");
        }
    }

    #[test]
    fn lower_never_exceeds_upper() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 128] {
            for k in 1..=q + 3 {
                let v = m_mds(k, q);
                if let Some(hi) = v.hi {
                    assert!(v.lo <= hi, "k={k} q={q}");
                    assert!(hi > k, "k={k} q={q}");
                }
            }
        }
    }
}
