//! The morphism χ rewriting the reducible stepped line over the independent letters 2, 3, 4,
//! and the point sets of the modified line.

use crate::error::{Error, Result};
use crate::geometry::plane::Pt;
use crate::model::Model;
use crate::subst::{Letter, Word};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChiVariant {
    /// 1 ↦ 34, 5 ↦ 32
    #[default]
    Canonical,
    /// 1 ↦ 43
    FlipOne,
    /// 5 ↦ 23
    FlipFive,
    FlipBoth,
}

impl ChiVariant {
    pub fn image(self, a: Letter) -> Result<&'static [Letter]> {
        let flip1 = matches!(self, ChiVariant::FlipOne | ChiVariant::FlipBoth);
        let flip5 = matches!(self, ChiVariant::FlipFive | ChiVariant::FlipBoth);
        Ok(match a {
            1 if flip1 => &[4, 3],
            1 => &[3, 4],
            2 => &[2],
            3 => &[3],
            4 => &[4],
            5 if flip5 => &[2, 3],
            5 => &[3, 2],
            _ => return Err(Error::Family(format!("letter {a} has no image under χ"))),
        })
    }
}

pub fn chi_apply(w: &[Letter], variant: ChiVariant) -> Result<Word> {
    let mut out = Vec::with_capacity(w.len() * 2);
    for &a in w {
        out.extend_from_slice(variant.image(a)?);
    }
    Ok(out)
}

/// π(e_1) = π(e_3) + π(e_4) and π(e_5) = π(e_2) + π(e_3), checked exactly on the Z[β] keys.
pub fn rational_dependencies_hold(model: &Model) -> bool {
    if model.n != 5 {
        return false;
    }
    let key = |v: [i64; 5]| model.proj.key(&v);
    key([1, 0, -1, -1, 0]).iter().all(|&x| x == 0) && key([0, -1, -1, 0, 1]).iter().all(|&x| x == 0)
}

pub fn require_family(model: &Model) -> Result<()> {
    if rational_dependencies_hold(model) {
        Ok(())
    } else {
        Err(Error::Family("χ needs π(e1) = π(e3) + π(e4) and π(e5) = π(e2) + π(e3)".into()))
    }
}

/// Prefix of w = χ(u) with at least `len` letters, u the fixed point starting with 1.
pub fn modified_line(model: &Model, len: usize, variant: ChiVariant) -> Result<Word> {
    require_family(model)?;
    // |χ(u_0..u_k)| ≥ k, so len letters of u suffice
    let u = model.sub.fixed_point_prefix(1, len.max(1))?;
    let mut w = chi_apply(&u, variant)?;
    w.truncate(len);
    Ok(w)
}

/// {π_c(l(w_0…w_{N−1})) : N < bound, w_{N…N+ℓ} = word}: samples of the modified tile of a
/// cylinder (a single letter gives R̃(a)).
pub fn modified_cloud(model: &Model, word: &[Letter], bound: usize, variant: ChiVariant) -> Result<Vec<Pt>> {
    let w = modified_line(model, bound + word.len(), variant)?;
    let mut x = vec![0i64; model.n];
    let mut out = Vec::new();
    for nidx in 0..bound {
        if w[nidx..].starts_with(word) {
            out.push(model.kc(&x));
        }
        x[w[nidx] as usize - 1] += 1;
    }
    Ok(out)
}
