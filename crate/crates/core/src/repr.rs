//! Recovering a frame from an operator and checking that the frame's
//! canonical operator reproduces it.
//!
//! Morphisms of a product of chains into `[0,1]` are its coordinate
//! projections, so a frame built here has the target coordinates as `S` and
//! the source coordinates as `T`.

use crate::error::{Error, Result};
use crate::filters::enumerate_ultrafilters;
use crate::frames::{check_fm, check_strong_fm, FmFunction, Frame};
use crate::mv::{Element, FiniteMvAlgebra, MvOps};
use crate::Rat;

fn coordinates(alg: &FiniteMvAlgebra) -> Vec<usize> {
    enumerate_ultrafilters(alg)
        .iter()
        .map(|u| u.ultrafilter_coordinate().expect("ultrafilters have one coordinate"))
        .collect()
}

/// `s R t` iff `s(G(x)) ≤ t(x)` for every `x` of the source.
pub fn build_rho(g: &FmFunction) -> Frame {
    let (src, tgt) = (g.source(), g.target());
    let images: Vec<(Element, Element)> = src.elements().map(|x| {
        let gx = g.apply(&x);
        (x, gx)
    }).collect();
    let mut edges = Vec::new();
    for s in coordinates(tgt) {
        for t in coordinates(src) {
            if images.iter().all(|(x, gx)| tgt.coord_le(gx, s, src, x, t)) {
                edges.push((s, t));
            }
        }
    }
    Frame::new(tgt.dim(), src.dim(), &edges).expect("dimensions are positive")
}

/// Where a diagram check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramFailure {
    pub x: Element,
    /// Morphism (coordinate) of the target, 0-based.
    pub s: usize,
    pub lhs: Rat,
    pub rhs: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepresentationVerdict {
    Commutes,
    Counterexample(DiagramFailure),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub frame: Frame,
    pub verdict: RepresentationVerdict,
}

/// `s(G(x)) = min { t(x) : s R t }` (empty meet 1) for all `x` and `s`, where
/// `R` relates target coordinates to source coordinates.
fn diagram(g: &FmFunction, frame: &Frame) -> Option<DiagramFailure> {
    let (src, tgt) = (g.source(), g.target());
    for x in src.elements() {
        let gx = g.apply(&x);
        for s in 0..tgt.dim() {
            let lhs: Rat = tgt.value(&gx, s);
            let rhs = frame.successors(s).map(|t| src.value::<Rat>(&x, t)).min().unwrap_or(Rat::from_integer(1));
            if lhs != rhs {
                return Some(DiagramFailure { x, s, lhs, rhs });
            }
        }
    }
    None
}

pub fn verify_representation(g: &FmFunction) -> Representation {
    let frame = build_rho(g);
    let verdict = match diagram(g, &frame) {
        None => RepresentationVerdict::Commutes,
        Some(f) => RepresentationVerdict::Counterexample(f),
    };
    Representation { frame, verdict }
}

/// Runs both fm checkers and reports whether FM1-FM5 implied FM6-FM10.
/// A divergence is logged, not raised.
pub fn verify_duals(g: &FmFunction, nmax: u32) -> Result<bool> {
    let fm = check_fm(g).passed();
    let strong = check_strong_fm(g, nmax)?;
    if fm && !strong.passed() {
        let first = strong.failures().next().expect("a failed report has a failure");
        log::warn!(
            "table passes FM1-FM5 but not {}: {}",
            first.axiom,
            first.witness.as_deref().unwrap_or("")
        );
        return Ok(false);
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TenseVerdict {
    Embeds,
    /// The relations built from `G` and `H` are not mutually inverse.
    NotInverse,
    /// A diagram failed; `past` selects the `H` diagram.
    Diagram { past: bool, failure: DiagramFailure },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TenseRepresentation {
    pub rho_g: Frame,
    pub rho_h: Frame,
    pub verdict: TenseVerdict,
}

/// Builds the relations of `G` and `H`, checks that one is the inverse of the
/// other, then checks both diagrams against the relation of `G`.
pub fn verify_tense_representation(g: &FmFunction, h: &FmFunction) -> Result<TenseRepresentation> {
    if !g.is_endo() || !h.is_endo() || g.source() != h.source() {
        return Err(Error::Structural("tense operators must be endo-maps of one algebra".into()));
    }
    let rho_g = build_rho(g);
    let rho_h = build_rho(h);
    let verdict = if rho_h != rho_g.inverse() {
        TenseVerdict::NotInverse
    } else if let Some(failure) = diagram(g, &rho_g) {
        TenseVerdict::Diagram { past: false, failure }
    } else if let Some(failure) = diagram(h, &rho_g.inverse()) {
        TenseVerdict::Diagram { past: true, failure }
    } else {
        TenseVerdict::Embeds
    };
    Ok(TenseRepresentation { rho_g, rho_h, verdict })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameFlags {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
}

pub fn frame_properties(frame: &Frame) -> Result<FrameFlags> {
    if !frame.is_time_frame() {
        return Err(Error::Structural("frame properties need S = T".into()));
    }
    let n = frame.s_count();
    let reflexive = (0..n).all(|i| frame.related(i, i));
    let symmetric = frame.edges().iter().all(|&(s, t)| frame.related(t, s));
    let transitive = frame
        .edges()
        .iter()
        .all(|&(i, j)| frame.successors(j).all(|k| frame.related(i, k)));
    Ok(FrameFlags { reflexive, symmetric, transitive })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OperatorFlags {
    /// `G(x) ≤ x` and `H(x) ≤ x` for all `x`.
    pub deflationary: bool,
    /// `G = H`.
    pub equal: bool,
    /// `G(G(x)) ≥ G(x)` and `H(H(x)) ≥ H(x)` for all `x`.
    pub iterate_above: bool,
}

pub fn operator_properties(g: &FmFunction, h: &FmFunction) -> Result<OperatorFlags> {
    if !g.is_endo() || !h.is_endo() || g.source() != h.source() {
        return Err(Error::Structural("operators must be endo-maps of one algebra".into()));
    }
    let a = g.source();
    let elems: Vec<Element> = a.elements().collect();
    let deflationary = elems.iter().all(|x| a.leq(&g.apply(x), x) && a.leq(&h.apply(x), x));
    let equal = g.indices() == h.indices();
    let iterate_above = elems.iter().all(|x| {
        let (gx, hx) = (g.apply(x), h.apply(x));
        a.leq(&gx, &g.apply(&gx)) && a.leq(&hx, &h.apply(&hx))
    });
    Ok(OperatorFlags { deflationary, equal, iterate_above })
}
