//! Parallel drivers over the core library.

use std::collections::BTreeMap;

use rayon::prelude::*;
use sylowchar_core::coregraph::{form, CoreForm};
use sylowchar_core::groupcore::{DixonBounds, GroupError, QuatternGroup, Spectrum};
use sylowchar_core::posetkit::antichains;
use sylowchar_core::reducer::{self, ReductionOutcome};
use sylowchar_core::resolver::{resolve_core, FamilySpectrum, ResolverConfig};
use sylowchar_core::{RootSet, RootSystem};

use crate::error::Result;

/// Reduces every antichain in parallel; the result is in antichain order.
pub fn enumerate_cores(rs: &RootSystem) -> ReductionOutcome {
    let parts: Vec<ReductionOutcome> = antichains(rs)
        .into_par_iter()
        .map(|sigma| reducer::reduce_quattern(rs, sigma, reducer::standard_s(rs, sigma), sigma))
        .collect();
    let mut out = ReductionOutcome::default();
    for p in parts {
        out.extend(p);
    }
    out
}

/// The first `(S, Z)` of each form, in form order.
pub fn form_representatives(rs: &RootSystem, pairs: &[(RootSet, RootSet)]) -> BTreeMap<CoreForm, (RootSet, RootSet)> {
    let mut out = BTreeMap::new();
    for &(s, z) in pairs {
        out.entry(form(rs, s, z)).or_insert((s, z));
    }
    out
}

/// A resolved core.
#[derive(Clone, Debug)]
pub struct ResolvedCore {
    pub s: RootSet,
    pub z: RootSet,
    pub form: CoreForm,
    pub q: u32,
    pub result: FamilySpectrum,
}

/// Resolves cores in parallel, keeping the input order.
pub fn resolve_cores(
    rs: &RootSystem,
    pairs: &[(RootSet, RootSet)],
    q: u32,
    config: &ResolverConfig,
) -> Result<Vec<ResolvedCore>> {
    pairs
        .par_iter()
        .map(|&(s, z)| {
            let result = resolve_core(rs, s, z, q, config)?;
            Ok(ResolvedCore { s, z, form: form(rs, s, z), q, result })
        })
        .collect()
}

/// Spectra keyed by `(S, Z)`, for cores that resolved completely.
pub fn spectra_map(resolved: &[ResolvedCore]) -> BTreeMap<(RootSet, RootSet), Spectrum> {
    resolved
        .iter()
        .filter(|r| r.result.is_complete())
        .map(|r| ((r.s, r.z), r.result.spectrum.clone()))
        .collect()
}

/// Oracle spectra for cores whose group order is within the bounds; `None` when skipped.
pub fn dixon_spectra(
    rs: &RootSystem,
    pairs: &[(RootSet, RootSet)],
    q: u32,
    bounds: DixonBounds,
) -> Result<Vec<Option<Spectrum>>> {
    pairs
        .par_iter()
        .map(|&(s, z)| {
            let g = QuatternGroup::new(rs, q, s)?;
            if g.order() > bounds.max_group_order as u128 {
                return Ok(None);
            }
            match g.dixon_irr_z(rs, z, bounds) {
                Ok(sp) => Ok(Some(sp)),
                Err(GroupError::TooLarge { .. }) => Ok(None),
                Err(e) => Err(e.into()),
            }
        })
        .collect()
}
