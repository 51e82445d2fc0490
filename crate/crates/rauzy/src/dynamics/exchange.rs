//! The domain exchange Ẽ on the modified tiles R̃(a), a ∈ {2, 3, 4}, its orbits and codings,
//! and the first-return comparison with the classical exchange on R.
//!
//! R̃(a) is realised as −R(b∧c) − π_c(e_a) with {b, c} = {2, 3, 4} ∖ {a}, and Ẽ translates
//! R̃(a) by +π_c(e_a), the direction in which the modified stepped line advances.

use super::chi::{modified_line, require_family, ChiVariant};
use super::numeration::{prefix_gifs, wedge_gifs, Gifs};
use crate::error::{Error, Result};
use crate::fractal::approx::{rauzy_approx, tile_outlines, ApproxTile};
use crate::geometry::plane::{self, Pt};
use crate::model::Model;
use crate::subst::Letter;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const EXCHANGE_LETTERS: [Letter; 3] = [2, 3, 4];
pub const AMBIGUITY_MARGIN: f64 = 1e-7;
pub const DEFAULT_IFS_DEPTH: usize = 120;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Class {
    Tile(Letter),
    /// the point lies in (or within the margin of) several tiles
    Ambiguous(Vec<Letter>),
    Outside,
}

/// The two complementary wedge letters of a ∈ {2, 3, 4}.
fn complementary_type(a: Letter) -> Vec<Letter> {
    EXCHANGE_LETTERS.iter().copied().filter(|&b| b != a).collect()
}

#[derive(Clone, Debug, Serialize)]
pub enum ClassifierKind {
    /// point-in-polygon against level-k tiles with an ambiguity band around their outlines
    Polygon { level: usize, margin: f64 },
    /// membership in the graph-directed attractor resolved to depth D
    Ifs { depth: usize },
}

struct PolygonTile {
    tile: ApproxTile,
    outlines: Vec<Vec<Pt>>,
    bbox: plane::BBox,
}

enum Backend {
    Polygon(Vec<PolygonTile>, f64),
    Ifs(Gifs, Vec<usize>, usize),
}

pub struct Partition {
    pub kind: ClassifierKind,
    /// π_c(e_a) for a ∈ {2, 3, 4}
    pub shifts: Vec<Pt>,
    backend: Backend,
}

impl Partition {
    pub fn new(model: &Model, kind: ClassifierKind) -> Result<Partition> {
        require_family(model)?;
        model.require_planar()?;
        let shifts: Vec<Pt> = EXCHANGE_LETTERS.iter().map(|&a| model.unit_kc[a as usize - 1]).collect();
        let backend = match &kind {
            ClassifierKind::Polygon { level, margin } => {
                let tiles = EXCHANGE_LETTERS
                    .iter()
                    .zip(&shifts)
                    .map(|(&a, &s)| {
                        let ty = complementary_type(a);
                        let neg = plane::scale(s, -1.0);
                        let tile = rauzy_approx(model, &ty, *level).reflected(-1.0, neg);
                        let outlines: Vec<Vec<Pt>> = tile_outlines(model, &ty, *level)
                            .into_iter()
                            .map(|l| l.into_iter().map(|p| plane::sub(neg, p)).collect())
                            .collect();
                        let pts: Vec<Pt> = tile.corners().into_iter().flatten().collect();
                        PolygonTile { bbox: plane::BBox::of(&pts), tile, outlines }
                    })
                    .collect();
                Backend::Polygon(tiles, *margin)
            }
            ClassifierKind::Ifs { depth } => {
                let g = wedge_gifs(model);
                let states = EXCHANGE_LETTERS.iter().map(|&a| model.top.index[&complementary_type(a)]).collect();
                Backend::Ifs(g, states, *depth)
            }
        };
        Ok(Partition { kind, shifts, backend })
    }

    fn shift_of(&self, a: Letter) -> Pt {
        self.shifts[a as usize - 2]
    }

    pub fn classify(&self, x: Pt) -> Class {
        let mut hits = Vec::new();
        match &self.backend {
            Backend::Polygon(tiles, margin) => {
                let mut near = false;
                for (&a, t) in EXCHANGE_LETTERS.iter().zip(tiles) {
                    if x[0] < t.bbox.min[0] - margin || x[0] > t.bbox.max[0] + margin || x[1] < t.bbox.min[1] - margin || x[1] > t.bbox.max[1] + margin {
                        continue;
                    }
                    let d = t
                        .outlines
                        .iter()
                        .flat_map(|l| (0..l.len()).map(move |i| plane::point_segment_distance(x, l[i], l[(i + 1) % l.len()])))
                        .fold(f64::INFINITY, f64::min);
                    if d < *margin {
                        near = true;
                        hits.push(a);
                    } else if t.tile.polygons.iter().any(|p| plane::point_in_convex(x, &p.corners())) {
                        hits.push(a);
                    }
                }
                if near && !hits.is_empty() {
                    return Class::Ambiguous(hits);
                }
            }
            Backend::Ifs(g, states, depth) => {
                for (&a, &st) in EXCHANGE_LETTERS.iter().zip(states) {
                    // x ∈ R̃(a) ⟺ −x − π_c(e_a) ∈ R(b∧c)
                    let y = plane::sub(plane::scale(x, -1.0), self.shift_of(a));
                    if g.contains(st, y, *depth) {
                        hits.push(a);
                    }
                }
            }
        }
        match hits.len() {
            0 => Class::Outside,
            1 => Class::Tile(hits[0]),
            _ => Class::Ambiguous(hits),
        }
    }

    /// One step of Ẽ from a point known to lie in R̃(a).
    pub fn step(&self, x: Pt, a: Letter) -> Pt {
        plane::add(x, self.shift_of(a))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Coding {
    pub classifier: ClassifierKind,
    pub letters: Vec<Letter>,
    pub endpoint: Pt,
    /// index at which the orbit stopped on an ambiguous point, if it did
    pub ambiguous_at: Option<usize>,
}

/// Iterates Ẽ from `start`, stopping at the first ambiguous point.
pub fn exchange_orbit(partition: &Partition, start: Pt, steps: usize) -> Result<Coding> {
    let mut x = start;
    let mut letters = Vec::with_capacity(steps);
    for i in 0..steps {
        match partition.classify(x) {
            Class::Tile(a) => {
                letters.push(a);
                x = partition.step(x, a);
            }
            Class::Ambiguous(_) => {
                return Ok(Coding { classifier: partition.kind.clone(), letters, endpoint: x, ambiguous_at: Some(i) })
            }
            Class::Outside => return Err(Error::Escape(i)),
        }
    }
    Ok(Coding { classifier: partition.kind.clone(), letters, endpoint: x, ambiguous_at: None })
}

/// Membership in the classical fractal R = ∪ R(a), resolved to the given depth.
pub struct ClassicalTiles {
    gifs: Gifs,
    depth: usize,
}

impl ClassicalTiles {
    pub fn new(model: &Model, depth: usize) -> ClassicalTiles {
        ClassicalTiles { gifs: prefix_gifs(model), depth }
    }

    pub fn letters_containing(&self, x: Pt) -> Vec<Letter> {
        (0..self.gifs.states.len()).filter(|&s| self.gifs.contains(s, x, self.depth)).map(|s| s as Letter + 1).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReturnSample {
    pub index: usize,
    pub letter: Letter,
    pub return_time: Option<usize>,
    pub displacement_error: f64,
    pub verified: bool,
    pub ambiguous: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FirstReturnReport {
    pub classifier: ClassifierKind,
    pub samples: usize,
    pub verified: usize,
    pub ambiguous: usize,
    /// unambiguous samples with a wrong return time or displacement
    pub failed: usize,
    pub verified_fraction: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub failures: Vec<ReturnSample>,
    pub holds: bool,
}

/// Samples x = π_c(l(u_0…u_{k−1})) ∈ R(u_k) at random k, iterates Ẽ until the orbit re-enters R,
/// and checks the return time against |χ(u_k)| and the return point against x + π_c(e_{u_k}).
pub fn first_return_check(model: &Model, partition: &Partition, samples: usize, seed: u64, variant: ChiVariant) -> Result<FirstReturnReport> {
    require_family(model)?;
    let pool = (samples * 20).max(1000);
    let u = model.sub.fixed_point_prefix(1, pool + 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks: Vec<usize> = (0..samples).map(|_| rng.gen_range(0..pool)).collect();
    // prefix abelianizations, cumulative
    let mut prefix = vec![vec![0i64; model.n]; pool + 1];
    for k in 0..pool {
        prefix[k + 1] = prefix[k].clone();
        prefix[k + 1][u[k] as usize - 1] += 1;
    }
    let classical = ClassicalTiles::new(model, DEFAULT_IFS_DEPTH);
    let results = crate::par::map(&picks, |&k| {
        let a = u[k];
        let x0 = model.kc(&prefix[k]);
        let expected_time = variant.image(a).map(|w| w.len()).unwrap_or(0);
        let mut x = x0;
        let mut ambiguous = false;
        let mut time = None;
        for t in 1..=4 {
            match partition.classify(x) {
                Class::Tile(b) => x = partition.step(x, b),
                _ => {
                    ambiguous = true;
                    break;
                }
            }
            let inside = classical.letters_containing(x);
            if !inside.is_empty() {
                time = Some(t);
                break;
            }
        }
        let target = plane::add(x0, model.unit_kc[a as usize - 1]);
        let err = plane::norm(plane::sub(x, target));
        let verified = !ambiguous && time == Some(expected_time) && err <= AMBIGUITY_MARGIN;
        ReturnSample { index: k, letter: a, return_time: time, displacement_error: err, verified, ambiguous }
    });
    let verified = results.iter().filter(|r| r.verified).count();
    let ambiguous = results.iter().filter(|r| r.ambiguous).count();
    let failures: Vec<ReturnSample> = results.iter().filter(|r| !r.verified && !r.ambiguous).cloned().collect();
    let frac = verified as f64 / samples.max(1) as f64;
    Ok(FirstReturnReport {
        classifier: partition.kind.clone(),
        samples,
        verified,
        ambiguous,
        failed: failures.len(),
        verified_fraction: frac,
        tolerance: AMBIGUITY_MARGIN,
        seed,
        holds: frac >= 0.99 && failures.is_empty(),
        failures: failures.into_iter().take(50).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CodingReport {
    pub classifier: ClassifierKind,
    pub steps: usize,
    pub expected_prefix: String,
    pub coded_prefix: String,
    pub ambiguous_positions: usize,
    pub mismatches: Vec<usize>,
    pub escapes: Vec<usize>,
    pub holds: bool,
}

/// Codes the Ẽ-orbit of 0 and compares it with w = χ(u). The orbit is followed exactly on
/// Z^n; at ambiguous positions it continues with the letter of w.
pub fn coding_cross_check(model: &Model, partition: &Partition, steps: usize, variant: ChiVariant) -> Result<CodingReport> {
    let w = modified_line(model, steps, variant)?;
    let mut x = vec![0i64; model.n];
    let mut coded = Vec::with_capacity(steps);
    let mut mismatches = Vec::new();
    let mut escapes = Vec::new();
    let mut ambiguous = 0;
    for (i, &expect) in w.iter().enumerate() {
        let next = match partition.classify(model.kc(&x)) {
            Class::Tile(a) => {
                if a != expect {
                    mismatches.push(i);
                }
                a
            }
            Class::Ambiguous(_) => {
                ambiguous += 1;
                expect
            }
            Class::Outside => {
                escapes.push(i);
                expect
            }
        };
        coded.push(next);
        x[next as usize - 1] += 1;
    }
    let show = |v: &[Letter]| v.iter().take(40).map(|a| a.to_string()).collect::<String>();
    Ok(CodingReport {
        classifier: partition.kind.clone(),
        steps,
        expected_prefix: show(&w),
        coded_prefix: show(&coded),
        ambiguous_positions: ambiguous,
        holds: mismatches.is_empty() && escapes.is_empty(),
        mismatches,
        escapes,
    })
}
