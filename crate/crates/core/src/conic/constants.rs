use crate::error::{Error, Result};

fn binomial(n: i128, k: i128) -> Option<i128> {
    if k < 0 || k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Number of complex rational plane curves of degree `d` through `3d − 1`
/// generic points, by the Kontsevich–Manin recursion from `N_1 = 1`.
pub fn kontsevich_nd(d: u32) -> Result<i128> {
    if d == 0 {
        return Err(Error::InvalidInput("degree must be >= 1".into()));
    }
    let overflow = || Error::Overflow { d };
    let mut table: Vec<i128> = vec![0, 1];
    for dd in 2..=i128::from(d) {
        let mut total: i128 = 0;
        for d1 in 1..dd {
            let d2 = dd - d1;
            let n1 = table[d1 as usize];
            let n2 = table[d2 as usize];
            let c1 = binomial(3 * dd - 4, 3 * d1 - 2).ok_or_else(overflow)?;
            let c2 = binomial(3 * dd - 4, 3 * d1 - 1).ok_or_else(overflow)?;
            let a = (d1 * d1 * d2 * d2).checked_mul(c1).ok_or_else(overflow)?;
            let b = (d1 * d1 * d1 * d2).checked_mul(c2).ok_or_else(overflow)?;
            let term = n1
                .checked_mul(n2)
                .and_then(|nn| nn.checked_mul(a - b))
                .ok_or_else(overflow)?;
            total = total.checked_add(term).ok_or_else(overflow)?;
        }
        table.push(total);
    }
    Ok(table[d as usize])
}

/// Welschinger invariant `W_d` for the degrees where it is tabulated.
pub fn welschinger_wd(d: u32) -> Result<i64> {
    match d {
        1 | 2 => Ok(1),
        3 => Ok(8),
        _ => Err(Error::Unsupported { d }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_values() {
        assert_eq!(kontsevich_nd(1).unwrap(), 1);
        assert_eq!(kontsevich_nd(2).unwrap(), 1);
        assert_eq!(kontsevich_nd(3).unwrap(), 12);
        assert_eq!(kontsevich_nd(4).unwrap(), 620);
        assert_eq!(kontsevich_nd(5).unwrap(), 87304);
        assert_eq!(kontsevich_nd(6).unwrap(), 26_312_976);
    }

    #[test]
    fn overflow_reported() {
        let mut d = 6;
        loop {
            match kontsevich_nd(d) {
                Ok(v) => assert!(v > 0),
                Err(Error::Overflow { d: e }) => {
                    assert_eq!(e, d);
                    break;
                }
                Err(e) => panic!("{e}"),
            }
            d += 1;
            assert!(d < 64);
        }
    }

    #[test]
    fn welschinger_table() {
        assert_eq!(welschinger_wd(1).unwrap(), 1);
        assert_eq!(welschinger_wd(2).unwrap(), 1);
        assert_eq!(welschinger_wd(3).unwrap(), 8);
        assert!(matches!(
            welschinger_wd(4),
            Err(Error::Unsupported { d: 4 })
        ));
    }
}
