//! Budget-gated exhaustive search over tuples in `{0, ..., m-1}^len`,
//! scanned in lexicographic order. Searches may be partitioned across
//! threads by the leading coordinate; the reported hit is always the
//! lexicographically first one, independent of thread count.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

/// Controls for exponential enumerations: a hard cap on the number of
/// evaluation points and the number of worker threads.
#[derive(Debug, Clone, Copy)]
pub struct EnumOpts {
    pub budget: u64,
    pub threads: usize,
}

/// Default cap of 2^24 evaluation points per decision.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

impl Default for EnumOpts {
    fn default() -> Self {
        EnumOpts {
            budget: DEFAULT_BUDGET,
            threads: 1,
        }
    }
}

impl EnumOpts {
    /// Lifts the point cap entirely (the `--force` flag).
    pub fn unlimited(self) -> Self {
        EnumOpts {
            budget: u64::MAX,
            ..self
        }
    }
}

/// Number of points `m^len`, saturating.
pub fn required_points(m: u64, len: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..len {
        acc = acc.saturating_mul(m as u128);
    }
    acc
}

fn check_budget(m: u64, len: usize, opts: &EnumOpts) -> Result<()> {
    let needed = required_points(m, len);
    if needed > opts.budget as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: opts.budget,
        });
    }
    Ok(())
}

type WorkerHit<T> = (usize, Option<(Vec<u64>, T)>);

/// Finds the lexicographically first tuple `t` in `{0..m}^len` for which
/// `test(t)` returns `Some`, together with that value. Returns `Ok(None)`
/// when no tuple matches. Fails fast with `BudgetExceeded` when `m^len`
/// exceeds the configured budget.
pub fn lex_find<T, F>(m: u64, len: usize, opts: &EnumOpts, test: F) -> Result<Option<(Vec<u64>, T)>>
where
    T: Send,
    F: Fn(&[u64]) -> Option<T> + Sync,
{
    assert!(m >= 1);
    check_budget(m, len, opts)?;
    if len == 0 {
        return Ok(test(&[]).map(|t| (Vec::new(), t)));
    }

    let workers = opts.threads.clamp(1, m as usize);
    if workers == 1 {
        return Ok(scan_range(m, len, 0..m, &test, None, usize::MAX));
    }

    // Partition the leading coordinate into contiguous ranges, one per
    // worker. A worker may abandon its range once a lower-indexed worker
    // has found a hit, because that hit is lexicographically smaller than
    // anything the higher-indexed worker could still find.
    let best_worker = AtomicUsize::new(usize::MAX);
    let chunk = m.div_ceil(workers as u64);
    let mut hits: Vec<WorkerHit<T>> = std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers);
        for w in 0..workers {
            let lo = chunk * w as u64;
            let hi = (lo + chunk).min(m);
            let test = &test;
            let best = &best_worker;
            handles.push(scope.spawn(move || {
                let hit = scan_range(m, len, lo..hi, test, Some(best), w);
                if hit.is_some() {
                    best.fetch_min(w, Ordering::SeqCst);
                }
                (w, hit)
            }));
        }
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    hits.sort_by_key(|&(w, _)| w);
    Ok(hits.into_iter().find_map(|(_, hit)| hit))
}

fn scan_range<T, F>(
    m: u64,
    len: usize,
    first: std::ops::Range<u64>,
    test: &F,
    cancel: Option<&AtomicUsize>,
    worker: usize,
) -> Option<(Vec<u64>, T)>
where
    F: Fn(&[u64]) -> Option<T> + Sync,
{
    let mut tuple = vec![0u64; len];
    let mut tested: u64 = 0;
    for v0 in first {
        tuple[0] = v0;
        for t in &mut tuple[1..] {
            *t = 0;
        }
        loop {
            if let Some(found) = test(&tuple) {
                return Some((tuple, found));
            }
            tested += 1;
            if tested.is_multiple_of(1024) {
                if let Some(best) = cancel {
                    if best.load(Ordering::Relaxed) < worker {
                        return None;
                    }
                }
            }
            // odometer with the last coordinate fastest; position 0 is
            // owned by the outer loop
            let mut pos = len;
            let mut carried_out = true;
            while pos > 1 {
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < m {
                    carried_out = false;
                    break;
                }
                tuple[pos] = 0;
            }
            if carried_out {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_lex_first_hit() {
        let opts = EnumOpts::default();
        // first tuple whose sum is 3, over {0,1,2}^3, lex order
        let hit = lex_find(3, 3, &opts, |t| {
            let s: u64 = t.iter().sum();
            (s == 3).then_some(s)
        })
        .unwrap();
        assert_eq!(hit.unwrap().0, vec![0, 1, 2]);
    }

    #[test]
    fn exhausts_without_hit() {
        let opts = EnumOpts::default();
        let seen = std::sync::atomic::AtomicU64::new(0);
        let hit = lex_find(2, 4, &opts, |_| {
            seen.fetch_add(1, Ordering::Relaxed);
            None::<()>
        })
        .unwrap();
        assert!(hit.is_none());
        assert_eq!(seen.load(Ordering::Relaxed), 16);
    }

    #[test]
    fn empty_tuple_is_tested_once() {
        let opts = EnumOpts::default();
        let hit = lex_find(5, 0, &opts, |t| {
            assert!(t.is_empty());
            Some(99)
        })
        .unwrap();
        assert_eq!(hit, Some((vec![], 99)));
    }

    #[test]
    fn budget_is_enforced() {
        let opts = EnumOpts {
            budget: 100,
            threads: 1,
        };
        let err = lex_find(10, 3, &opts, |_| None::<()>).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                needed: 1000,
                budget: 100
            }
        );
        assert!(lex_find(10, 2, &opts, |_| None::<()>).is_ok());
        let unlimited = EnumOpts {
            budget: 100,
            threads: 1,
        }
        .unlimited();
        assert!(lex_find(10, 3, &unlimited, |_| None::<()>).is_ok());
    }

    #[test]
    fn thread_count_does_not_change_result() {
        for threads in [2, 3, 8, 16] {
            let opts = EnumOpts {
                budget: DEFAULT_BUDGET,
                threads,
            };
            let hit = lex_find(4, 4, &opts, |t| {
                (t.iter().sum::<u64>() % 7 == 5).then(|| t.to_vec())
            })
            .unwrap();
            // lex-first tuple over {0..4}^4 with digit sum congruent to 5
            assert_eq!(hit.unwrap().0, vec![0, 0, 2, 3], "threads={threads}");
        }
    }
}
