//! The differential on exterior-power tensor modules, its square-zero and
//! equivariance identities, the image submodule certificate, and the
//! comparison with the deformed exterior derivative when S is full.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::glmod::{exterior_algebra, wedge_insert, GlModule};
use crate::matrix::RowSpace;
use crate::poly::{MultiIndex, MultiPoly};
use crate::rational::{rint, Rat};
use crate::sl::{sl_basis, SlElement};
use crate::tensor::{corner_box, ModelAction, TensorContext, TensorVector};

/// Context for the graded complex: the full exterior algebra with its basis
/// subsets, over a corner model (n, S, g).
pub struct DeRhamComplex {
    pub ctx: TensorContext,
    pub subsets: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    action: ModelAction,
}

impl DeRhamComplex {
    pub fn new(n: usize, s: Vec<usize>, g: MultiPoly) -> Result<Self, String> {
        let (module, subsets) = exterior_algebra(n);
        let ctx = TensorContext::new(n, s, g, module)?;
        let index = subsets.iter().cloned().enumerate().map(|(p, l)| (l, p)).collect();
        let action = ModelAction::corner(&ctx);
        Ok(DeRhamComplex { ctx, subsets, index, action })
    }

    /// `d(f (x) v) = sum_i (t_i f) (x) (e_i wedge v)` where `t_i` means the
    /// module action of multiplication (with corner projection).
    pub fn differential(&self, w: &TensorVector) -> TensorVector {
        let mask = self.ctx.s_mask();
        let mut out = TensorVector::zero();
        for ((m, l), c) in &w.terms {
            let subset = &self.subsets[*l];
            for i in 0..self.ctx.n {
                let Some((target, sign)) = wedge_insert(subset, i) else {
                    continue;
                };
                let mut m2 = m.clone();
                m2[i] += 1;
                if mask[i] && m2[i] >= 0 {
                    continue; // corner projection
                }
                let l2 = self.index[&target];
                out.add_term(m2, l2, c * rint(sign));
            }
        }
        out
    }

    pub fn apply(&self, x: &SlElement, w: &TensorVector) -> TensorVector {
        self.action.apply(x, w)
    }

    /// Square-zero and equivariance over every corner cell of the box.
    pub fn verify(&self, box_n: i64, random_vectors: &[TensorVector]) -> Result<usize, String> {
        let mut checked = 0;
        for m in corner_box(&self.ctx, box_n) {
            for l in 0..self.ctx.module.dim {
                let w = TensorVector::basis(m.clone(), l);
                let dd = self.differential(&self.differential(&w));
                if !dd.is_zero() {
                    return Err(format!(
                        "d^2 != 0 at {}: residue {}",
                        w.text(),
                        dd.text()
                    ));
                }
                for x in sl_basis(self.ctx.n) {
                    let lhs = self.differential(&self.apply(&x, &w));
                    let rhs = self.apply(&x, &self.differential(&w));
                    if lhs != rhs {
                        return Err(format!(
                            "equivariance fails at {} under {}",
                            w.text(),
                            x.text()
                        ));
                    }
                    checked += 1;
                }
            }
        }
        for w in random_vectors {
            let dd = self.differential(&self.differential(w));
            if !dd.is_zero() {
                return Err(format!("d^2 != 0 on random vector {}", w.text()));
            }
            checked += 1;
        }
        Ok(checked)
    }
}

/// Outcome of the image-submodule certificate for one exterior degree.
#[derive(Debug, Clone)]
pub struct ImageReport {
    pub invariant: bool,
    pub nonzero: bool,
    pub proper: bool,
    pub detail: String,
}

impl ImageReport {
    pub fn certifies_nonsimplicity(&self) -> bool {
        self.invariant && self.nonzero && self.proper
    }
}

/// Certifies that the image of the differential from degree k-1 is an exact,
/// nonzero, proper invariant subspace of the degree-k module.
pub fn derham_image_check(
    n: usize,
    s: Vec<usize>,
    g: MultiPoly,
    k: usize,
    box_n: i64,
) -> Result<ImageReport, String> {
    if k < 1 || k > n.saturating_sub(1) {
        return Err("image certificate needs 1 <= k <= n-1".to_string());
    }
    let complex = DeRhamComplex::new(n, s, g)?;
    let ctx_k = TensorContext::new(
        n,
        complex.ctx.s.clone(),
        complex.ctx.g.clone(),
        GlModule::exterior(n, k),
    )?;
    let act_k = ModelAction::corner(&ctx_k);

    // embed: basis of wedge-k inside the graded algebra
    let subsets_k: Vec<usize> = complex
        .subsets
        .iter()
        .enumerate()
        .filter(|(_, l)| l.len() == k)
        .map(|(p, _)| p)
        .collect();
    let grade_to_k: BTreeMap<usize, usize> =
        subsets_k.iter().enumerate().map(|(small, &big)| (big, small)).collect();
    let project = |w: &TensorVector| -> TensorVector {
        let mut out = TensorVector::zero();
        for ((m, l), c) in &w.terms {
            if let Some(&small) = grade_to_k.get(l) {
                out.add_term(m.clone(), small, c.clone());
            }
        }
        out
    };

    // d applied to every degree-(k-1) cell of the enlarged and plain boxes
    let ctx_km1 = TensorContext::new(
        n,
        complex.ctx.s.clone(),
        complex.ctx.g.clone(),
        GlModule::exterior(n, k - 1),
    )?;
    let km1_subsets: Vec<usize> = complex
        .subsets
        .iter()
        .enumerate()
        .filter(|(_, l)| l.len() == k - 1)
        .map(|(p, _)| p)
        .collect();
    let image_of_box = |radius: i64| -> Vec<TensorVector> {
        let mut out = Vec::new();
        for m in corner_box(&ctx_km1, radius) {
            for &l in &km1_subsets {
                let d = complex.differential(&TensorVector::basis(m.clone(), l));
                let p = project(&d);
                if !p.is_zero() {
                    out.push(p);
                }
            }
        }
        out
    };
    // the twist can push generator images several steps outward; size the
    // verification span by the largest monomial degree in the table
    let mut slack = 1i64;
    for x in sl_basis(n) {
        for row in &act_k.presentation().image(&x).entries {
            for e in row {
                for ((te, _), _) in e.terms() {
                    for &v in te {
                        slack = slack.max(v);
                    }
                }
            }
        }
    }
    let small = image_of_box(box_n);
    let big = image_of_box(box_n + slack);
    let nonzero = !small.is_empty();

    // coordinates over the verification region
    let mut coord: BTreeMap<(MultiIndex, usize), usize> = BTreeMap::new();
    let key_of = |v: &TensorVector, coord: &mut BTreeMap<(MultiIndex, usize), usize>| {
        for key in v.terms.keys() {
            let next = coord.len();
            coord.entry(key.clone()).or_insert(next);
        }
    };
    for v in &big {
        key_of(v, &mut coord);
    }
    let mut images_of_small: Vec<(TensorVector, SlElement)> = Vec::new();
    for v in &small {
        for x in sl_basis(n) {
            let img = act_k.apply(&x, v);
            key_of(&img, &mut coord);
            images_of_small.push((img, x));
        }
    }
    let dim = coord.len();
    let to_vec = |v: &TensorVector| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); dim];
        for (key, c) in &v.terms {
            out[coord[key]] = c.clone();
        }
        out
    };
    let mut span = RowSpace::new(dim);
    for v in &big {
        span.insert(&to_vec(v));
    }
    let mut invariant = true;
    let mut detail = String::new();
    for (img, x) in &images_of_small {
        if !span.contains(&to_vec(img)) {
            invariant = false;
            detail = format!("image of d not invariant under {}", x.text());
            break;
        }
    }

    // properness: pick weights of in-box degree-k cells and compare the
    // exact per-weight image rank against the weight-space dimension
    let mut proper = false;
    if complex.ctx.g.is_zero() {
        'weights: for m in corner_box(&ctx_k, box_n) {
            for lk in 0..ctx_k.module.dim {
                let w = ctx_k.corner_weight(&m, lk);
                let space_dim = weight_space_cells(&ctx_k, &w).len();
                let preimages = weight_space_cells(&ctx_km1, &w);
                let mut img_coord: BTreeMap<(MultiIndex, usize), usize> = BTreeMap::new();
                let mut img_vectors = Vec::new();
                for (pm, pl) in &preimages {
                    let big_l = km1_subsets[*pl];
                    let d = project(&complex.differential(&TensorVector::basis(pm.clone(), big_l)));
                    if d.is_zero() {
                        continue;
                    }
                    for key in d.terms.keys() {
                        let next = img_coord.len();
                        img_coord.entry(key.clone()).or_insert(next);
                    }
                    img_vectors.push(d);
                }
                let mut img_span = RowSpace::new(img_coord.len());
                for v in &img_vectors {
                    let mut row = vec![Rat::zero(); img_coord.len()];
                    for (key, c) in &v.terms {
                        row[img_coord[key]] = c.clone();
                    }
                    img_span.insert(&row);
                }
                if img_span.dim() < space_dim {
                    proper = true;
                    break 'weights;
                }
            }
        }
    } else {
        // with a twist the module is not weight; properness follows from the
        // zero-twist count because the differential is degree-homogeneous in
        // the filtration sense, but we certify it directly on the zero-twist
        // companion context
        let companion = derham_image_check(n, complex.ctx.s.clone(), MultiPoly::zero(n, false), k, box_n)?;
        proper = companion.proper;
        if detail.is_empty() && !companion.proper {
            detail = "zero-twist companion failed properness".to_string();
        }
    }

    if detail.is_empty() {
        detail = format!(
            "image of d from degree {} certified on box {box_n}: invariant={invariant}, nonzero={nonzero}, proper={proper}",
            k - 1
        );
    }
    Ok(ImageReport { invariant, nonzero, proper, detail })
}

/// All corner cells of the given weight, enumerated exactly: the exponent is
/// determined per basis vector.
fn weight_space_cells(ctx: &TensorContext, w: &[Rat]) -> Vec<(MultiIndex, usize)> {
    let mut out = Vec::new();
    for l in 0..ctx.module.dim {
        let mut m = Vec::with_capacity(ctx.n);
        let mut ok = true;
        for k in 0..ctx.n {
            // w_k = -m_k + wt_k - 1  =>  m_k = wt_k - 1 - w_k
            let val = &ctx.module.weights[l][k] - rint(1) - &w[k];
            match crate::rational::to_i64(&val) {
                Some(v) if crate::rational::is_integer(&val) => m.push(v),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && ctx.in_corner(&m) {
            out.push((m, l));
        }
    }
    out
}

/// Compares the module differential at full S against the classical exterior
/// derivative deformed by dg, both computed independently, on every form of
/// polynomial degree at most `deg`.
pub fn witten_compare(n: usize, g: &MultiPoly, deg: i64) -> Result<usize, String> {
    let (module, subsets) = exterior_algebra(n);
    let index: BTreeMap<Vec<usize>, usize> =
        subsets.iter().cloned().enumerate().map(|(p, l)| (l, p)).collect();
    let s_full: Vec<usize> = (1..=n).collect();
    let ctx = TensorContext::new(n, s_full, g.clone(), module)?;

    // module side: t_i acts through the polynomial model
    let act = ModelAction::polynomial(&ctx);
    let grad: Vec<MultiPoly> = (0..n).map(|i| g.diff(i).expect("in range")).collect();

    // classical side on (polynomial, subset) pairs, Weyl machinery unused
    let classical = |w: &TensorVector| -> TensorVector {
        let mut out = TensorVector::zero();
        for ((k, l), c) in &w.terms {
            let subset = &subsets[*l];
            for i in 0..n {
                let Some((target, sign)) = wedge_insert(subset, i) else {
                    continue;
                };
                let l2 = index[&target];
                // d: coefficient k_i, exponent drops
                if k[i] != 0 {
                    let mut k2 = k.clone();
                    k2[i] -= 1;
                    out.add_term(k2, l2, c * rint(sign) * rint(k[i]));
                }
                // dg wedge: multiply by dg/dt_i
                for (e, gc) in grad[i].terms() {
                    let k2: MultiIndex = k.iter().zip(e).map(|(a, b)| a + b).collect();
                    out.add_term(k2, l2, c * rint(sign) * gc);
                }
            }
        }
        out
    };

    // module-side differential: t_i action through the twisted presentation
    let t_ops: Vec<crate::weyl::WeylOp> = (0..n)
        .map(|i| {
            // psi_full sends t_i to d_i; the exponential then adds dg/dt_i
            crate::weyl::WeylOp::d(n, i).add(&crate::weyl::WeylOp::from_poly(&grad[i]))
        })
        .collect();
    let module_diff = |w: &TensorVector| -> TensorVector {
        let mut out = TensorVector::zero();
        for ((k, l), c) in &w.terms {
            let subset = &subsets[*l];
            for i in 0..n {
                let Some((target, sign)) = wedge_insert(subset, i) else {
                    continue;
                };
                let l2 = index[&target];
                for (k2, coef) in t_ops[i].apply_to_monomial(k, None) {
                    out.add_term(k2, l2, c * rint(sign) * &coef);
                }
            }
        }
        out
    };

    let mut checked = 0;
    for k in crate::tensor::monomials_up_to(n, deg) {
        for l in 0..subsets.len() {
            let w = TensorVector::basis(k.clone(), l);
            let lhs = module_diff(&w);
            let rhs = classical(&w);
            if lhs != rhs {
                return Err(format!(
                    "deformed differential mismatch at {}: {} vs {}",
                    w.text(),
                    lhs.text(),
                    rhs.text()
                ));
            }
            checked += 1;
        }
    }
    // the module-side action of t_i must agree with the presentation image
    // of the corner row, tying the shortcut above back to the twisted table
    for (i, top) in t_ops.iter().enumerate() {
        let via_table = act
            .presentation()
            .image(&SlElement::E(n + 1, i + 1))
            .entries[0][0]
            .clone();
        let direct = top.scale(&-Rat::one());
        if via_table != direct {
            return Err(format!(
                "t-action shortcut disagrees with the table at variable {}",
                i + 1
            ));
        }
        checked += 1;
    }
    Ok(checked)
}
