//! Minimal graded projective resolutions of the simple modules over the
//! block algebra, the Koszul check, and Ext tables.
//!
//! P(λ) = A e_λ is spanned by normal paths leaving λ; A acts by
//! post-composition. A summand P(λ)⟨s⟩ puts e_λ in degree s.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, Rational, RowSpace, SparseMatrix};
use crate::pe2core::Weight;
use crate::quiveralg::{forward_complete, AlgebraElement, PathAlgebra, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Summand {
    pub vertex: Weight,
    pub shift: u32,
}

/// ⊕ P(λᵢ)⟨sᵢ⟩, in a fixed order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradedProjectiveSum {
    pub summands: Vec<Summand>,
}

impl GradedProjectiveSum {
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Multiplicity of P(λ)⟨j⟩.
    pub fn multiplicity(&self, lambda: Weight, shift: u32) -> usize {
        self.summands.iter().filter(|s| s.vertex == lambda && s.shift == shift).count()
    }

    fn shift_range(&self) -> Option<(u32, u32)> {
        let lo = self.summands.iter().map(|s| s.shift).min()?;
        let hi = self.summands.iter().map(|s| s.shift).max()?;
        Some((lo, hi))
    }
}

/// A homogeneous element of a graded projective sum: one component per
/// summand, all ending at `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumElement {
    pub target: Weight,
    pub degree: u32,
    pub parts: BTreeMap<usize, AlgebraElement>,
}

impl SumElement {
    pub fn is_zero(&self) -> bool {
        self.parts.values().all(|p| p.is_zero())
    }

    fn prune(mut self) -> Self {
        self.parts.retain(|_, p| !p.is_zero());
        self
    }

    pub fn format(&self, alg: &PathAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> =
            self.parts.iter().map(|(i, p)| format!("[{i}] {}", alg.format(p))).collect();
        parts.join("; ")
    }
}

#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub n: usize,
    pub projectives: GradedProjectiveSum,
    /// Image in P_{n−1} of the generator of each summand (empty for n = 0).
    pub boundary: Vec<SumElement>,
    /// Minimal homogeneous generators of ker φ_n; they define P_{n+1}.
    /// Not computed for the last step.
    pub generators: Vec<SumElement>,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub mu: Weight,
    pub window: Window,
    pub steps: Vec<ResolutionStep>,
}

/// Graph radius around μ that must be forward-complete for Ext^n.
pub fn ext_radius(n: usize) -> u32 {
    n as u32 + 1
}

/// Radius needed to trust all generator degrees of P_n (kernels are
/// computed up to four degrees above the top shift).
pub fn koszul_radius(n: usize) -> u32 {
    n as u32 + 4
}

impl Resolution {
    pub fn max_n(&self) -> usize {
        self.steps.len() - 1
    }

    /// Whether Ext^n out of μ is free of window effects.
    pub fn ext_safe(&self, n: usize) -> bool {
        forward_complete(&self.window, self.mu, ext_radius(n))
    }

    /// Whether every generator degree of P_n is free of window effects.
    pub fn koszul_safe(&self, n: usize) -> bool {
        forward_complete(&self.window, self.mu, koszul_radius(n))
    }
}

type Key = (usize, Vec<usize>);

/// Basis of (P)_{κ,d}: pairs (summand, normal path) with path length d − shift.
fn graded_basis(alg: &PathAlgebra, sum: &GradedProjectiveSum, kappa: Weight, d: u32) -> Vec<Key> {
    let mut out = Vec::new();
    for (i, s) in sum.summands.iter().enumerate() {
        if d >= s.shift {
            for p in alg.basis(s.vertex, kappa, d - s.shift) {
                out.push((i, p.arrows));
            }
        }
    }
    out
}

fn coords(x: &SumElement, index: &HashMap<Key, usize>, len: usize) -> Result<Vec<Rational>> {
    let mut v = vec![Rational::zero(); len];
    for (i, part) in &x.parts {
        for (path, c) in &part.terms {
            let k = index
                .get(&(*i, path.clone()))
                .ok_or_else(|| Error::Invariant(format!("component [{i}] outside the graded basis")))?;
            v[*k] = c.clone();
        }
    }
    Ok(v)
}

fn from_coords(
    alg: &PathAlgebra,
    sum: &GradedProjectiveSum,
    basis: &[Key],
    kappa: Weight,
    d: u32,
    c: &[Rational],
) -> SumElement {
    let mut parts: BTreeMap<usize, AlgebraElement> = BTreeMap::new();
    for ((i, path), x) in basis.iter().zip(c) {
        if x.is_zero() {
            continue;
        }
        let src = sum.summands[*i].vertex;
        parts
            .entry(*i)
            .or_insert_with(|| AlgebraElement::zero(src, kappa))
            .add_term(path.clone(), x);
    }
    let _ = alg;
    SumElement { target: kappa, degree: d, parts }.prune()
}

/// y · x for a homogeneous y ∈ e_κ A e_ν and x ending at ν.
fn left_mul(alg: &PathAlgebra, y: &AlgebraElement, x: &SumElement) -> SumElement {
    let deg = y.terms.keys().next().map_or(0, |p| p.len() as u32);
    let parts = x.parts.iter().map(|(i, p)| (*i, alg.multiply(y, p))).collect();
    SumElement { target: y.target, degree: x.degree + deg, parts }.prune()
}

fn arrow_mul(alg: &PathAlgebra, arrow: usize, x: &SumElement) -> SumElement {
    let parts = x.parts.iter().map(|(i, p)| (*i, alg.mul_arrow(arrow, p))).collect();
    let target = alg.presentation().arrow(arrow).target;
    SumElement { target, degree: x.degree + 1, parts }.prune()
}

/// φ applied to an element of the domain, given the images of the summand
/// generators.
fn apply_boundary(alg: &PathAlgebra, boundary: &[SumElement], x: &SumElement) -> SumElement {
    let mut parts: BTreeMap<usize, AlgebraElement> = BTreeMap::new();
    for (i, y) in &x.parts {
        let img = left_mul(alg, y, &boundary[*i]);
        for (j, p) in img.parts {
            match parts.get_mut(&j) {
                Some(q) => q.add_scaled(&p, &Rational::one()),
                None => {
                    parts.insert(j, p);
                }
            }
        }
    }
    SumElement { target: x.target, degree: x.degree, parts }.prune()
}

/// Normalize to leading coefficient 1 in the graded-basis order.
fn normalize(c: &mut [Rational]) {
    if let Some(lead) = c.iter().find(|x| !x.is_zero()).cloned() {
        for x in c.iter_mut() {
            *x /= &lead;
        }
    }
}

/// Minimal generators of ker φ, where φ: `sum` → previous sum is given by
/// `boundary` (`None` for the augmentation onto C e_μ). Runs the degree-
/// by-degree complement construction and checks the degree lower bound.
fn kernel_generators(
    alg: &PathAlgebra,
    n: usize,
    sum: &GradedProjectiveSum,
    prev: Option<(&GradedProjectiveSum, &[SumElement])>,
) -> Result<Vec<SumElement>> {
    let Some((lo, hi)) = sum.shift_range() else {
        return Ok(vec![]);
    };
    let top = hi + alg.truncation();
    let mut kernels: HashMap<(Weight, u32), Vec<SumElement>> = HashMap::new();
    let mut gens = Vec::new();
    for d in lo..=top {
        let mut kappas = BTreeSet::new();
        for s in &sum.summands {
            if d >= s.shift {
                kappas.extend(alg.targets(s.vertex, d - s.shift));
            }
        }
        for kappa in kappas {
            let basis = graded_basis(alg, sum, kappa, d);
            if basis.is_empty() {
                continue;
            }
            let index: HashMap<Key, usize> = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
            let kernel: Vec<Vec<Rational>> = match prev {
                None => {
                    if d == 0 {
                        vec![]
                    } else {
                        (0..basis.len())
                            .map(|i| (0..basis.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                            .collect()
                    }
                }
                Some((psum, pbound)) => {
                    let cod = graded_basis(alg, psum, kappa, d);
                    let cindex: HashMap<Key, usize> = cod.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
                    let mut m = SparseMatrix::zeros(cod.len(), basis.len());
                    for (col, (i, path)) in basis.iter().enumerate() {
                        let mut y = AlgebraElement::zero(sum.summands[*i].vertex, kappa);
                        y.add_term(path.clone(), &Rational::one());
                        let img = left_mul(alg, &y, &pbound[*i]);
                        for (r, x) in coords(&img, &cindex, cod.len())?.into_iter().enumerate() {
                            if !x.is_zero() {
                                m.set(r, col, x);
                            }
                        }
                    }
                    kernel_basis(&m)
                }
            };
            if kernel.is_empty() {
                continue;
            }
            // on_reso (1): homogeneous kernel elements of φ_n sit in degree ≥ n+1.
            if d <= n as u32 {
                return Err(Error::Invariant(format!(
                    "kernel of φ_{n} has an element of degree {d} at {kappa}"
                )));
            }
            // Part of the kernel generated in lower degrees: A_1 · ker_{d−1}.
            let mut space = RowSpace::new(basis.len());
            for &a in alg.presentation().in_arrows(kappa) {
                let src = alg.presentation().arrow(a).source;
                for k in kernels.get(&(src, d - 1)).into_iter().flatten() {
                    space.insert(&coords(&arrow_mul(alg, a, k), &index, basis.len())?);
                }
            }
            for mut v in kernel.iter().cloned() {
                if space.insert(&v) {
                    normalize(&mut v);
                    gens.push(from_coords(alg, sum, &basis, kappa, d, &v));
                }
            }
            kernels.insert(
                (kappa, d),
                kernel.iter().map(|v| from_coords(alg, sum, &basis, kappa, d, v)).collect(),
            );
        }
    }
    Ok(gens)
}

fn summands_of(gens: &[SumElement]) -> GradedProjectiveSum {
    GradedProjectiveSum {
        summands: gens.iter().map(|g| Summand { vertex: g.target, shift: g.degree }).collect(),
    }
}

/// Minimal graded projective resolution of C e_μ up to P_N.
pub fn resolve(alg: &PathAlgebra, mu: Weight, max_n: usize, window: Window) -> Result<Resolution> {
    if !alg.presentation().has_vertex(mu) || !forward_complete(&window, mu, 1) {
        return Err(Error::Window { weight: mu, reason: "the arrows out of μ and their targets' arrows must lie in the window".into() });
    }
    let p0 = GradedProjectiveSum { summands: vec![Summand { vertex: mu, shift: 0 }] };
    let g0 = kernel_generators(alg, 0, &p0, None)?;
    let mut steps = vec![ResolutionStep { n: 0, projectives: p0, boundary: vec![], generators: g0 }];
    for n in 1..=max_n {
        let prev = steps.last().expect("step 0 exists");
        let projectives = summands_of(&prev.generators);
        let boundary = prev.generators.clone();
        let generators = if n < max_n {
            kernel_generators(alg, n, &projectives, Some((&prev.projectives, &boundary)))?
        } else {
            vec![]
        };
        steps.push(ResolutionStep { n, projectives, boundary, generators });
    }
    let res = Resolution { mu, window, steps };
    check_invariants(alg, &res)?;
    Ok(res)
}

/// The runtime invariants: φ∘φ = 0, minimality, shifts ≥ n, linear summands
/// mapping into linear summands, and the linear part squaring to zero.
pub fn check_invariants(alg: &PathAlgebra, res: &Resolution) -> Result<()> {
    let fail = |s: String| Err(Error::Invariant(s));
    for st in &res.steps {
        let n = st.n;
        if st.projectives.summands.iter().any(|s| (s.shift as usize) < n) {
            return fail(format!("P_{n} has a summand with shift below {n}"));
        }
        for (k, b) in st.boundary.iter().enumerate() {
            for p in b.parts.values() {
                if p.terms.keys().any(|w| w.is_empty()) {
                    return fail(format!("boundary of summand {k} of P_{n} has an idempotent term"));
                }
            }
        }
        if n >= 1 {
            let prev = &res.steps[n - 1];
            // φ_{n−1} ∘ φ_n = 0.
            if n >= 2 {
                for (k, b) in st.boundary.iter().enumerate() {
                    if !apply_boundary(alg, &prev.boundary, b).is_zero() {
                        return fail(format!("φ_{} φ_{n} ≠ 0 on summand {k}", n - 1));
                    }
                }
            }
            // Linear parts land in linear parts, and compose to zero.
            let linear = |s: &Summand, m: usize| s.shift as usize == m;
            for (k, b) in st.boundary.iter().enumerate() {
                if !linear(&st.projectives.summands[k], n) {
                    continue;
                }
                if b.parts.keys().any(|&j| !linear(&prev.projectives.summands[j], n - 1)) {
                    return fail(format!("linear summand {k} of P_{n} maps outside the linear part"));
                }
                if n >= 2 {
                    let lin_prev: Vec<SumElement> = prev
                        .boundary
                        .iter()
                        .enumerate()
                        .map(|(j, x)| {
                            let mut x = x.clone();
                            if !linear(&prev.projectives.summands[j], n - 1) {
                                x.parts.clear();
                            }
                            x.parts.retain(|i, _| linear(&res.steps[n - 2].projectives.summands[*i], n - 2));
                            x
                        })
                        .collect();
                    if !apply_boundary(alg, &lin_prev, b).is_zero() {
                        return fail(format!("linear complex fails to square to zero at P_{n}"));
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulFailure {
    pub n: usize,
    pub vertex: Weight,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    pub mu: Weight,
    pub passed: bool,
    /// Highest n whose generator degrees were checked inside the safe region.
    pub checked_through: usize,
    pub first_failure: Option<KoszulFailure>,
}

/// Every summand of P_n (n within the safe region) must have shift exactly n.
pub fn koszul_check(res: &Resolution) -> KoszulReport {
    koszul_check_below(res, u32::MAX)
}

/// `koszul_check` ignoring generators above internal degree `cap`. Over an
/// algebra cut off at path length `cap`, the minimal resolution only agrees
/// with the untruncated one in internal degrees ≤ `cap`.
pub fn koszul_check_below(res: &Resolution, cap: u32) -> KoszulReport {
    let mut checked_through = 0;
    for st in &res.steps {
        if !res.koszul_safe(st.n) {
            break;
        }
        if let Some(s) = st.projectives.summands.iter().find(|s| s.shift as usize != st.n && s.shift <= cap) {
            return KoszulReport {
                mu: res.mu,
                passed: false,
                checked_through: st.n,
                first_failure: Some(KoszulFailure { n: st.n, vertex: s.vertex, degree: s.shift }),
            };
        }
        checked_through = st.n;
    }
    KoszulReport { mu: res.mu, passed: true, checked_through, first_failure: None }
}

/// The linear subcomplex (summands with shift n in degree n) equals the
/// full resolution in every safe degree.
pub fn linear_part_is_everything(res: &Resolution) -> bool {
    res.steps
        .iter()
        .take_while(|st| res.koszul_safe(st.n))
        .all(|st| st.projectives.summands.iter().filter(|s| s.shift as usize == st.n).count() == st.projectives.len())
}

/// Coefficient of the arrow `label` out of the linear summand at `from` in
/// P_{n−1}, inside the boundary of the linear summand at `target` in P_n.
/// None if either summand is missing or not unique.
pub fn boundary_coefficient(
    alg: &PathAlgebra,
    res: &Resolution,
    n: usize,
    target: Weight,
    from: Weight,
    label: &str,
) -> Option<Rational> {
    if n == 0 || n >= res.steps.len() {
        return None;
    }
    let unique = |sum: &GradedProjectiveSum, v: Weight, shift: usize| {
        let mut it = sum.summands.iter().enumerate().filter(|(_, s)| s.vertex == v && s.shift as usize == shift);
        match (it.next(), it.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    };
    let k = unique(&res.steps[n].projectives, target, n)?;
    let j = unique(&res.steps[n - 1].projectives, from, n - 1)?;
    let arrow = alg.presentation().arrow_by_label(from, label)?;
    let c = res.steps[n].boundary[k]
        .parts
        .get(&j)
        .and_then(|p| p.terms.get(&vec![arrow]).cloned())
        .unwrap_or_else(Rational::zero);
    Some(c)
}

/// N^n_n(μ, λ): multiplicity of P(λ)⟨n⟩ in P_n.
pub fn ext_dims(res: &Resolution, lambda: Weight, n: usize) -> Option<usize> {
    res.steps.get(n).map(|st| st.projectives.multiplicity(lambda, n as u32))
}

/// {2n, 2n−4, …, −2n}, with M_0 = {0} and M_{−1} = ∅.
pub fn m_set(n: i64) -> Vec<i64> {
    if n < 0 {
        return vec![];
    }
    (0..=n).map(|i| 2 * n - 4 * i).collect()
}

/// Weights λ with N^n_n(μ, λ) = 1 according to the closed form.
pub fn ext_formula_support(mu: Weight, n: usize) -> Vec<Weight> {
    let a = mu.a;
    let n = n as i64;
    if n == 0 {
        return vec![mu];
    }
    let mut out = Vec::new();
    let mut add = |base: Weight, db: i64, ms: Vec<i64>, keep: &dyn Fn(i64) -> bool| {
        for m in ms.into_iter().filter(|&m| keep(m)) {
            out.push(base.shift(m, db));
        }
    };
    if a >= 1 {
        add(mu, n, m_set(n), &|m| m > 2 * (n - a - 1));
        add(mu.dual(), n - 1, m_set(n - 1), &|m| m < -2 * (n - a - 2));
        add(mu, n - 2, m_set(n - 2), &|m| m > 2 * (n - a - 3));
    } else {
        add(mu, n, m_set(n), &|m| m < 1 - a);
        add(mu.dual(), n - 1, m_set(n - 1), &|m| m > 2 * (n + a));
    }
    out.sort();
    out
}

/// Closed-form N^n_n(μ, λ) for odd μ, λ.
pub fn ext_formula(mu: Weight, lambda: Weight, n: usize) -> usize {
    ext_formula_support(mu, n).into_iter().filter(|&w| w == lambda).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtEntry {
    pub mu: Weight,
    pub lambda: Weight,
    pub n: usize,
    /// None when (μ, n) is window-limited.
    pub computed: Option<usize>,
    pub formula: usize,
}

impl ExtEntry {
    pub fn agrees(&self) -> bool {
        self.computed.map_or(true, |c| c == self.formula)
    }
}

/// (μ, λ, n) ↦ N^n_n from a resolution, next to the closed form. Only pairs
/// where either value is nonzero are listed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    pub entries: Vec<ExtEntry>,
}

impl ExtTable {
    pub fn from_resolution(res: &Resolution) -> ExtTable {
        let mut entries = Vec::new();
        for st in &res.steps {
            let n = st.n;
            let safe = res.ext_safe(n);
            let mut lambdas: BTreeSet<Weight> = ext_formula_support(res.mu, n).into_iter().collect();
            lambdas.extend(st.projectives.summands.iter().filter(|s| s.shift as usize == n).map(|s| s.vertex));
            for lambda in lambdas {
                entries.push(ExtEntry {
                    mu: res.mu,
                    lambda,
                    n,
                    computed: safe.then(|| st.projectives.multiplicity(lambda, n as u32)),
                    formula: ext_formula(res.mu, lambda, n),
                });
            }
        }
        ExtTable { entries }
    }

    pub fn merge(tables: impl IntoIterator<Item = ExtTable>) -> ExtTable {
        let mut entries: Vec<ExtEntry> = tables.into_iter().flat_map(|t| t.entries).collect();
        entries.sort_by_key(|e| (e.mu, e.n, e.lambda));
        ExtTable { entries }
    }

    pub fn disagreements(&self) -> Vec<&ExtEntry> {
        self.entries.iter().filter(|e| !e.agrees()).collect()
    }

    /// Entries actually compared (inside the safe region).
    pub fn compared(&self) -> usize {
        self.entries.iter().filter(|e| e.computed.is_some()).count()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            schema: &'a str,
            entries: &'a [ExtEntry],
        }
        serde_json::to_string_pretty(&Doc { schema: EXT_SCHEMA, entries: &self.entries }).expect("table serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("mu_a,mu_b,lambda_a,lambda_b,n,value,formula\n");
        for e in &self.entries {
            let v = e.computed.map_or_else(|| "window-limited".to_string(), |c| c.to_string());
            s.push_str(&format!("{},{},{},{},{},{},{}\n", e.mu.a, e.mu.b, e.lambda.a, e.lambda.b, e.n, v, e.formula));
        }
        s
    }

    /// One grid per (μ, n): rows Δb, columns Δa relative to μ; cells show
    /// the computed value, or `v/f` when it differs from the formula.
    pub fn to_markdown(&self) -> String {
        let mut groups: BTreeMap<(Weight, usize), Vec<&ExtEntry>> = BTreeMap::new();
        for e in &self.entries {
            groups.entry((e.mu, e.n)).or_default().push(e);
        }
        let mut s = String::new();
        for ((mu, n), es) in groups {
            s.push_str(&format!("### μ = ({mu}), n = {n}\n\n"));
            let das: BTreeSet<i64> = es.iter().map(|e| e.lambda.a - mu.a).collect();
            let dbs: BTreeSet<i64> = es.iter().map(|e| e.lambda.b - mu.b).collect();
            s.push_str("| Δb \\ Δa |");
            for da in &das {
                s.push_str(&format!(" {da} |"));
            }
            s.push_str("\n|---|");
            s.push_str(&"---|".repeat(das.len()));
            s.push('\n');
            for db in dbs.iter().rev() {
                s.push_str(&format!("| {db} |"));
                for da in &das {
                    let cell = es.iter().find(|e| e.lambda.a - mu.a == *da && e.lambda.b - mu.b == *db).map_or(
                        String::new(),
                        |e| match e.computed {
                            None => format!("?/{}", e.formula),
                            Some(c) if c == e.formula => c.to_string(),
                            Some(c) => format!("{c}/{}", e.formula),
                        },
                    );
                    s.push_str(&format!(" {cell} |"));
                }
                s.push('\n');
            }
            s.push('\n');
        }
        s
    }
}

pub const EXT_SCHEMA: &str = "pe2odd.ext/1";
pub const RESOLUTION_SCHEMA: &str = "pe2odd.resolution/1";

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorDoc {
    pub vertex: Weight,
    pub degree: u32,
    pub element: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepDoc {
    pub n: usize,
    pub summands: Vec<Summand>,
    pub boundary: Vec<String>,
    pub generators: Vec<GeneratorDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionDoc {
    pub schema: String,
    pub mu: Weight,
    pub window: Window,
    pub steps: Vec<StepDoc>,
}

impl Resolution {
    pub fn to_doc(&self, alg: &PathAlgebra) -> ResolutionDoc {
        ResolutionDoc {
            schema: RESOLUTION_SCHEMA.into(),
            mu: self.mu,
            window: self.window,
            steps: self
                .steps
                .iter()
                .map(|st| StepDoc {
                    n: st.n,
                    summands: st.projectives.summands.clone(),
                    boundary: st.boundary.iter().map(|b| b.format(alg)).collect(),
                    generators: st
                        .generators
                        .iter()
                        .map(|g| GeneratorDoc { vertex: g.target, degree: g.degree, element: g.format(alg) })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Window used for resolutions out of |a| ≤ `a_abs` up to degree N.
pub fn resolution_window(a_abs: i64, b0: i64, n: usize) -> Window {
    Window::symmetric(a_abs, b0, b0 + n as i64 + 6)
}

/// The algebra with `qp = 0` dropped. It is infinite-dimensional, so paths
/// are cut off at a fixed length.
pub fn mutated_algebra(window: Window, truncation: u32) -> PathAlgebra {
    let p = crate::quiveralg::pe2_presentation(window).without_relation("qp");
    PathAlgebra::new(p, truncation)
}
