//! Enumeration of monomials in a degree window and the worker-pool plumbing
//! behind every exhaustive pairwise check. Results are merged in input
//! order, so reports are identical for any worker count.

use crate::error::Error;
use crate::poly::{Monomial, Window};
use crate::report::Violation;

/// All window monomials of total degree `<= max_deg`, sorted by (n, m).
pub fn monomials_up_to(window: Window, max_deg: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    match window {
        Window::Poly => {
            for n in 0..=max_deg {
                for m in 0..=(max_deg - n) {
                    out.push(Monomial::new(n, m));
                }
            }
        }
        Window::Laurent(w) => {
            for n in -w..=w {
                for m in -w..=w {
                    let mono = Monomial::new(n, m);
                    if mono.total_deg() <= max_deg {
                        out.push(mono);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Ordered pairs `(a, b)` with `deg a + deg b <= max_deg`, sorted by (a, b).
pub fn monomial_pairs_up_to(window: Window, max_deg: i64) -> Vec<(Monomial, Monomial)> {
    let monos = monomials_up_to(window, max_deg);
    let mut out = Vec::new();
    for a in &monos {
        for b in &monos {
            if a.total_deg() + b.total_deg() <= max_deg {
                out.push((*a, *b));
            }
        }
    }
    out
}

/// Runs `check` over `items`, fanning out across `workers` threads when the
/// `parallel` feature is on, and flattens the violations in item order.
pub fn run_check<T, F>(items: &[T], workers: usize, check: F) -> Result<Vec<Violation>, Error>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<Violation>, Error> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if workers != 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidFamilyParams(format!("worker pool: {e}")))?;
        let nested: Result<Vec<Vec<Violation>>, Error> =
            pool.install(|| items.par_iter().map(&check).collect());
        return Ok(nested?.into_iter().flatten().collect());
    }
    let _ = workers;
    let mut out = Vec::new();
    for item in items {
        out.extend(check(item)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_counts() {
        // (N+1)(N+2)/2 monomials of degree <= N
        assert_eq!(monomials_up_to(Window::Poly, 4).len(), 15);
        assert_eq!(monomials_up_to(Window::Laurent(1), 2).len(), 9);
    }

    #[test]
    fn pair_order_is_deterministic() {
        let pairs = monomial_pairs_up_to(Window::Poly, 3);
        let mut sorted = pairs.clone();
        sorted.sort();
        assert_eq!(pairs, sorted);
    }
}
