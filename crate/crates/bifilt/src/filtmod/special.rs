//! The special product (injective-side) and special sum (flat-side)
//! constructions, window-clamped.
//!
//! A product-shaped module has a base block plus one block per (filtration,
//! level); chain i at level k contains the base, every block of the other
//! filtrations, and the filtration-i blocks with level <= k. The block at
//! level window_hi + 1 stands in for the whole upper tail (outside the window
//! factors repeat verbatim) and therefore belongs to no finite chain level.
//!
//! A sum-shaped module has a base block lying in no chain, plus one block per
//! (nonempty subset P of filtrations, level tuple); the block lies in chain i
//! at level k iff i is in P and every i-position of the tuple is at most k.
//! Tuple entries at window_lo - 1 stand in for the lower tail and count as
//! minus infinity.

use crate::error::Result;
use crate::exactlin::{Matrix, QuotientView, Ring, Subspace};
use crate::filtmod::chain::FiltrationChain;
use crate::filtmod::module::FilteredModule;
use crate::filtmod::morphism::FilteredMorphism;

/// How many factor levels a hull keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullStyle {
    /// Every level in [window_lo - 1, window_hi + 1]; the literal clamped
    /// construction the Hom decompositions are stated for.
    Full,
    /// Only jump levels (plus the tail stand-in when the filtration is not
    /// exhaustive); enough for strictness, keeps resolutions small.
    Minimal,
    /// Minimal with every factor doubled; used to produce a genuinely
    /// different resolution of the same complex.
    Padded,
}

/// One block of a product-shaped module. `filt == None` is the base block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiBlock {
    pub filt: Option<usize>,
    pub level: i64,
    /// Upper-tail stand-in: never a member of a finite chain level.
    pub tail: bool,
    pub dim: usize,
    pub offset: usize,
}

/// A product-shaped (specially injective) module with its block layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialInjective {
    pub module: FilteredModule,
    pub blocks: Vec<PiBlock>,
}

/// One summand of a sum-shaped module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaBlock {
    /// Ascending, nonempty subset of filtration ids.
    pub filts: Vec<usize>,
    pub levels: Vec<i64>,
    /// Per position: lower-tail stand-in (counts as minus infinity).
    pub tails: Vec<bool>,
    pub dim: usize,
    pub offset: usize,
}

/// A sum-shaped (specially flat) module with its summand layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialFlat {
    pub module: FilteredModule,
    pub base_dim: usize,
    pub summands: Vec<SigmaBlock>,
}

fn coordinate_subspace(ring: &Ring, ambient: usize, coords: &[usize]) -> Subspace {
    if coords.is_empty() {
        return Subspace::zero(ring, ambient);
    }
    let rows: Vec<Vec<_>> = coords
        .iter()
        .map(|&j| {
            let mut row = vec![ring.zero(); ambient];
            row[j] = ring.one();
            row
        })
        .collect();
    Subspace::span(&Matrix::from_rows(ring, rows))
}

/// Assemble the filtered module of a product shape. `caps[i-1]` is the top
/// genuine level of filtration i (blocks above it are tail stand-ins).
fn build_pi_module(
    ring: &Ring,
    n: usize,
    base_dim: usize,
    blocks: &[PiBlock],
    caps: &[i64],
) -> Result<FilteredModule> {
    let ambient = base_dim + blocks.iter().map(|b| b.dim).sum::<usize>();
    let mut chains = Vec::with_capacity(n);
    for i in 1..=n {
        let own: Vec<&PiBlock> = blocks.iter().filter(|b| b.filt == Some(i)).collect();
        let lo = own
            .iter()
            .filter(|b| !b.tail)
            .map(|b| b.level)
            .min()
            .unwrap_or(caps[i - 1])
            - 1;
        let hi = caps[i - 1].max(lo);
        let mut steps = Vec::with_capacity((hi - lo + 1) as usize);
        for k in lo..=hi {
            let mut coords: Vec<usize> = (0..base_dim).collect();
            for b in blocks {
                let member = match b.filt {
                    None => true,
                    Some(j) if j != i => true,
                    Some(_) => !b.tail && b.level <= k,
                };
                if member {
                    coords.extend(b.offset..b.offset + b.dim);
                }
            }
            coords.sort_unstable();
            steps.push(coordinate_subspace(ring, ambient, &coords));
        }
        chains.push(FiltrationChain::new(lo, steps)?);
    }
    FilteredModule::new(ring.clone(), ambient, chains)
}

/// Levels kept for filtration `i` of `e` under a hull style, with tail flags.
fn hull_levels(chain: &FiltrationChain, style: HullStyle) -> Vec<(i64, bool)> {
    match style {
        HullStyle::Full => (chain.window_lo - 1..=chain.window_hi + 1)
            .map(|l| (l, l == chain.window_hi + 1))
            .collect(),
        HullStyle::Minimal | HullStyle::Padded => {
            let mut out: Vec<(i64, bool)> =
                chain.jump_levels().into_iter().map(|l| (l, false)).collect();
            if !chain.top().is_full() {
                out.push((chain.window_hi + 1, true));
            }
            out
        }
    }
}

/// The clamped special product of `f`: base block F, one block F^{(i)}_l per
/// clamped level. Realizes the product construction whose Hom decomposition
/// splits off one factor per level.
pub fn pi_special(f: &FilteredModule) -> Result<SpecialInjective> {
    let ring = f.ring.clone();
    let mut blocks = Vec::new();
    let mut offset = f.ambient_dim;
    for i in 1..=f.n() {
        let chain = &f.chains[i - 1];
        for (l, tail) in hull_levels(chain, HullStyle::Full) {
            let dim = chain.step(l).dim();
            blocks.push(PiBlock { filt: Some(i), level: l, tail, dim, offset });
            offset += dim;
        }
    }
    blocks.insert(0, PiBlock { filt: None, level: 0, tail: false, dim: f.ambient_dim, offset: 0 });
    let caps: Vec<i64> = f.chains.iter().map(|c| c.window_hi).collect();
    let module = build_pi_module(&ring, f.n(), f.ambient_dim, &blocks[1..], &caps)?;
    Ok(SpecialInjective { module, blocks })
}

/// Strict injective embedding of `e` into a product-shaped module built from
/// identity hulls: base block E, factor blocks E / E^{(i)}_{l-1}.
pub fn embed_special(e: &FilteredModule, style: HullStyle) -> Result<(SpecialInjective, FilteredMorphism)> {
    let ring = e.ring.clone();
    let copies = if style == HullStyle::Padded { 2 } else { 1 };
    let mut blocks = Vec::new();
    let mut components: Vec<Matrix> = vec![Matrix::identity(&ring, e.ambient_dim)];
    let mut offset = e.ambient_dim;
    for i in 1..=e.n() {
        let chain = &e.chains[i - 1];
        for (l, tail) in hull_levels(chain, style) {
            let quot = QuotientView::new(&Subspace::full(&ring, e.ambient_dim), chain.step(l - 1))?;
            for _ in 0..copies {
                blocks.push(PiBlock { filt: Some(i), level: l, tail, dim: quot.dim(), offset });
                offset += quot.dim();
                components.push(quot.proj.clone());
            }
        }
    }
    let caps: Vec<i64> = e.chains.iter().map(|c| c.window_hi).collect();
    let module = build_pi_module(&ring, e.n(), e.ambient_dim, &blocks, &caps)?;
    blocks.insert(0, PiBlock { filt: None, level: 0, tail: false, dim: e.ambient_dim, offset: 0 });
    let mut map = components.remove(0);
    for c in components {
        map = map.vstack(&c);
    }
    let morphism = FilteredMorphism::new(e.clone(), module.clone(), map)?;
    Ok((SpecialInjective { module, blocks }, morphism))
}

/// All level tuples for a subset of filtrations under the full clamp.
fn full_tuples(e: &FilteredModule, filts: &[usize]) -> Vec<(Vec<i64>, Vec<bool>)> {
    let mut tuples: Vec<(Vec<i64>, Vec<bool>)> = vec![(vec![], vec![])];
    for &i in filts {
        let chain = &e.chains[i - 1];
        let mut next = Vec::new();
        for (lv, tail) in (chain.window_lo - 1..=chain.window_hi + 1)
            .map(|l| (l, l == chain.window_lo - 1))
        {
            for (ls, ts) in &tuples {
                let mut ls = ls.clone();
                let mut ts = ts.clone();
                ls.push(lv);
                ts.push(tail);
                next.push((ls, ts));
            }
        }
        tuples = next;
    }
    tuples
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    match n {
        1 => vec![vec![1]],
        2 => vec![vec![1], vec![2], vec![1, 2]],
        _ => unreachable!("n <= 2 enforced at module construction"),
    }
}

/// Piece of `e` at a tuple, treating tail positions as minus infinity.
pub fn piece_at_tuple(e: &FilteredModule, filts: &[usize], levels: &[i64], tails: &[bool]) -> Subspace {
    let mut acc = Subspace::full(&e.ring, e.ambient_dim);
    for (m, &i) in filts.iter().enumerate() {
        let chain = &e.chains[i - 1];
        let l = if tails[m] { chain.window_lo - 1 } else { levels[m] };
        acc = acc.intersect(chain.step(l)).expect("same ambient");
    }
    acc
}

fn build_sigma_module(
    ring: &Ring,
    n: usize,
    base_dim: usize,
    summands: &[SigmaBlock],
) -> Result<FilteredModule> {
    let ambient = base_dim + summands.iter().map(|b| b.dim).sum::<usize>();
    let mut chains = Vec::with_capacity(n);
    for i in 1..=n {
        let mut own_levels: Vec<i64> = Vec::new();
        for b in summands {
            for (m, &j) in b.filts.iter().enumerate() {
                if j == i && !b.tails[m] {
                    own_levels.push(b.levels[m]);
                }
            }
        }
        let lo = own_levels.iter().min().copied().unwrap_or(0) - 1;
        let hi = own_levels.iter().max().copied().unwrap_or(0).max(lo);
        let mut steps = Vec::with_capacity((hi - lo + 1) as usize);
        for k in lo..=hi {
            let mut coords: Vec<usize> = Vec::new();
            for b in summands {
                if !b.filts.contains(&i) {
                    continue;
                }
                let member = b
                    .filts
                    .iter()
                    .enumerate()
                    .filter(|(_, &j)| j == i)
                    .all(|(m, _)| b.tails[m] || b.levels[m] <= k);
                if member {
                    coords.extend(b.offset..b.offset + b.dim);
                }
            }
            coords.sort_unstable();
            steps.push(coordinate_subspace(ring, ambient, &coords));
        }
        chains.push(FiltrationChain::new(lo, steps)?);
    }
    FilteredModule::new(ring.clone(), ambient, chains)
}

/// The clamped special sum of `e`: base summand E plus one summand
/// E^P_{l_1..l_m} per nonempty subset P and clamped level tuple.
pub fn sigma_special(e: &FilteredModule) -> Result<SpecialFlat> {
    let ring = e.ring.clone();
    let mut summands = Vec::new();
    let mut offset = e.ambient_dim;
    for filts in subsets(e.n()) {
        for (levels, tails) in full_tuples(e, &filts) {
            let dim = piece_at_tuple(e, &filts, &levels, &tails).dim();
            summands.push(SigmaBlock { filts: filts.clone(), levels, tails, dim, offset });
            offset += dim;
        }
    }
    let module = build_sigma_module(&ring, e.n(), e.ambient_dim, &summands)?;
    Ok(SpecialFlat { module, base_dim: e.ambient_dim, summands })
}

/// Minimal summand support: a tuple is kept iff its piece strictly exceeds
/// the sum of the pieces one step down in each non-tail direction. Summing
/// kept pieces over the downset then reproduces every piece of `e`.
fn minimal_tuples(e: &FilteredModule, filts: &[usize]) -> Vec<(Vec<i64>, Vec<bool>)> {
    let mut kept = Vec::new();
    for (levels, tails) in full_tuples(e, filts) {
        let piece = piece_at_tuple(e, filts, &levels, &tails);
        let mut denom = Subspace::zero(&e.ring, e.ambient_dim);
        for m in 0..filts.len() {
            if tails[m] {
                continue;
            }
            let mut lower = levels.clone();
            lower[m] -= 1;
            let mut lower_tails = tails.clone();
            // one step below window_lo - 1 is still the tail
            if lower[m] < e.chains[filts[m] - 1].window_lo - 1 {
                lower_tails[m] = true;
            }
            denom = denom
                .sum(&piece_at_tuple(e, filts, &lower, &lower_tails))
                .expect("same ambient");
        }
        if piece != denom {
            kept.push((levels, tails));
        }
    }
    kept
}

/// Strict epimorphism onto `e` from a sum-shaped module built out of free
/// covers of the pieces (free on the chosen RREF basis of each piece).
pub fn cover_special(e: &FilteredModule, style: HullStyle) -> Result<(SpecialFlat, FilteredMorphism)> {
    let ring = e.ring.clone();
    let copies = if style == HullStyle::Padded { 2 } else { 1 };
    let mut summands = Vec::new();
    // base free cover Q -> E by the identity on coordinates
    let mut components: Vec<Matrix> = vec![Matrix::identity(&ring, e.ambient_dim)];
    let mut offset = e.ambient_dim;
    for filts in subsets(e.n()) {
        let tuples = match style {
            HullStyle::Full => full_tuples(e, &filts),
            HullStyle::Minimal | HullStyle::Padded => minimal_tuples(e, &filts),
        };
        for (levels, tails) in tuples {
            let piece = piece_at_tuple(e, &filts, &levels, &tails);
            for _ in 0..copies {
                summands.push(SigmaBlock {
                    filts: filts.clone(),
                    levels: levels.clone(),
                    tails: tails.clone(),
                    dim: piece.dim(),
                    offset,
                });
                offset += piece.dim();
                components.push(piece.basis.transpose());
            }
        }
    }
    let module = build_sigma_module(&ring, e.n(), e.ambient_dim, &summands)?;
    let mut map = components.remove(0);
    for c in components {
        map = map.hstack(&c);
    }
    let morphism = FilteredMorphism::new(module.clone(), e.clone(), map)?;
    Ok((SpecialFlat { module, base_dim: e.ambient_dim, summands }, morphism))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pi_of_zero_is_zero() {
        let q = Ring::rationals();
        let z = FilteredModule::zero(&q, 2);
        let pi = pi_special(&z).unwrap();
        assert_eq!(pi.module.ambient_dim, 0);
        let sigma = sigma_special(&z).unwrap();
        assert_eq!(sigma.module.ambient_dim, 0);
    }

    #[test]
    fn pi_factor_count_for_trivial_filtration() {
        let q = Ring::rationals();
        let f = FilteredModule::trivial(&q, 2, 1);
        let pi = pi_special(&f).unwrap();
        // clamped levels -2..=1 with step dims 0,0,2,2: ambient 2 + 4
        assert_eq!(pi.module.ambient_dim, 6);
    }

    #[test]
    fn embed_special_is_strict_injective() {
        for style in [HullStyle::Full, HullStyle::Minimal, HullStyle::Padded] {
            let e = fixtures::remark_2_3_source();
            let (_, emb) = embed_special(&e, style).unwrap();
            assert!(emb.is_injective());
            let (strict, w) = emb.is_strict().unwrap();
            assert!(strict, "style {style:?} witness {w:?}");
        }
    }

    #[test]
    fn embed_special_of_zero_module() {
        let q = Ring::rationals();
        let z = FilteredModule::zero(&q, 2);
        let (hull, emb) = embed_special(&z, HullStyle::Minimal).unwrap();
        assert_eq!(hull.module.ambient_dim, 0);
        assert!(emb.map.is_zero());
    }

    #[test]
    fn cover_special_is_strict_epi() {
        for style in [HullStyle::Full, HullStyle::Minimal] {
            let e = fixtures::remark_2_3_target();
            let (_, cov) = cover_special(&e, style).unwrap();
            assert!(cov.is_surjective());
            let (strict, w) = cov.is_strict().unwrap();
            assert!(strict, "style {style:?} witness {w:?}");
            // the (1,0),(2,0)-piece surjects onto N
            let src_piece = cov.source.piece(&[(1, 0), (2, 0)]).unwrap();
            let image = src_piece.image_under(&cov.map).unwrap();
            assert_eq!(image, e.piece(&[(1, 0), (2, 0)]).unwrap());
        }
    }

    #[test]
    fn sigma_single_filtration_shape() {
        // n = 1, two-step chain: summands are E plus one copy of E_l per
        // clamped l; filtration level k collects the summands with l <= k.
        let q = Ring::rationals();
        let e = FilteredModule::trivial(&q, 1, 1);
        let sf = sigma_special(&e).unwrap();
        // clamped levels -2..=1, piece dims 0,0,1,1 plus base 1
        assert_eq!(sf.module.ambient_dim, 3);
        let chain = &sf.module.chains[0];
        assert_eq!(chain.step(-1).dim(), 0); // tail stand-in is the zero bottom
        assert_eq!(chain.step(0).dim(), 1);
        assert_eq!(chain.step(1).dim(), 2);
    }
}
