//! Parallel per-sample evaluation with an order-preserving merge.

use bohr_core::VerificationReport;
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::error::CliError;

pub struct Pool(ThreadPool);

impl Pool {
    /// `threads == 0` lets rayon pick.
    pub fn new(threads: usize) -> Result<Self, CliError> {
        Ok(Self(
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()?,
        ))
    }

    /// `f(0), …, f(n−1)` in index order. The first error by index wins, so
    /// failures do not depend on scheduling.
    pub fn map<T, F>(&self, n: usize, f: F) -> Result<Vec<T>, CliError>
    where
        T: Send,
        F: Fn(usize) -> Result<T, CliError> + Sync,
    {
        let results: Vec<Result<T, CliError>> =
            self.0.install(|| (0..n).into_par_iter().map(&f).collect());
        results.into_iter().collect()
    }

    /// Runs one report per sample and merges them in sample order.
    pub fn sweep<F>(&self, n: usize, f: F) -> Result<VerificationReport, CliError>
    where
        F: Fn(usize) -> Result<VerificationReport, CliError> + Sync,
    {
        let mut merged = self.sweep_groups(n, 1, |i| Ok(vec![f(i)?]))?;
        Ok(merged.remove(0))
    }

    /// Each sample yields one report per group (same group order for every
    /// sample); group `g` of all samples is merged in sample order.
    pub fn sweep_groups<F>(
        &self,
        n: usize,
        groups: usize,
        f: F,
    ) -> Result<Vec<VerificationReport>, CliError>
    where
        F: Fn(usize) -> Result<Vec<VerificationReport>, CliError> + Sync,
    {
        let per_sample = self.map(n, |i| {
            let mut reports = f(i)?;
            debug_assert_eq!(reports.len(), groups);
            for v in reports.iter_mut().flat_map(|r| r.violations.iter_mut()) {
                v.sample = i;
            }
            Ok(reports)
        })?;
        let mut columns: Vec<Vec<VerificationReport>> = (0..groups).map(|_| Vec::new()).collect();
        for reports in per_sample {
            for (g, r) in reports.into_iter().enumerate() {
                columns[g].push(r);
            }
        }
        columns
            .into_iter()
            .map(|c| {
                let mut merged = merge_all(c)?;
                merged.samples = n;
                Ok(merged)
            })
            .collect()
    }
}

/// Left fold of [`VerificationReport::merge`].
pub fn merge_all(
    reports: impl IntoIterator<Item = VerificationReport>,
) -> Result<VerificationReport, CliError> {
    let mut iter = reports.into_iter();
    let first = iter.next().ok_or_else(|| CliError::Usage {
        field: "samples",
        message: "sweep produced no reports".into(),
    })?;
    iter.try_fold(first, |acc, r| acc.merge(r).map_err(CliError::from))
}
