//! Globally adaptive Gauss–Kronrod (10/21) integration.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Abscissae of the 21-point Kronrod rule on (−1, 1) in increasing order, paired with
/// (Kronrod weight, Gauss weight or 0).
pub fn kronrod21() -> [(f64, f64, f64); 21] {
    let mut out = [(0.0, 0.0, 0.0); 21];
    for i in 0..10 {
        let g = if i % 2 == 1 { WG[i / 2] } else { 0.0 };
        out[i] = (-XGK[i], WGK[i], g);
        out[20 - i] = (XGK[i], WGK[i], g);
    }
    out[10] = (0.0, WGK[10], 0.0);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-15, rel: 1e-12, max_intervals: 2000 }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel, ..Self::default() }
    }

    pub fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

/// Result of a numerical integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Integral {
    pub value: f64,
    /// Estimated absolute error.
    pub abs_err: f64,
    /// Integrand evaluations spent.
    pub evals: usize,
    /// False when the interval budget ran out before the tolerance was met.
    pub converged: bool,
}

impl Integral {
    pub fn zero() -> Self {
        Self { value: 0.0, abs_err: 0.0, evals: 0, converged: true }
    }

    pub fn add(self, other: Integral) -> Integral {
        Integral {
            value: self.value + other.value,
            abs_err: self.abs_err + other.abs_err,
            evals: self.evals + other.evals,
            converged: self.converged && other.converged,
        }
    }

    pub fn scale(self, s: f64) -> Integral {
        Integral { value: s * self.value, abs_err: s.abs() * self.abs_err, ..self }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// One 21-point Kronrod panel: (integral, error estimate).
pub fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut fv = [0.0; 21];
    for (i, &(t, _, _)) in kronrod21().iter().enumerate() {
        let x = c + h * t;
        let y = f(x);
        if !y.is_finite() {
            return Err(Error::NonFinite { abscissa: x });
        }
        fv[i] = y;
    }
    let mut resk = 0.0;
    let mut resg = 0.0;
    let mut resabs = 0.0;
    for (i, &(_, wk, wg)) in kronrod21().iter().enumerate() {
        resk += wk * fv[i];
        resg += wg * fv[i];
        resabs += wk * fv[i].abs();
    }
    let mean = 0.5 * resk;
    let resasc: f64 = kronrod21()
        .iter()
        .enumerate()
        .map(|(i, &(_, wk, _))| wk * (fv[i] - mean).abs())
        .sum();
    let hh = h.abs();
    let mut err = ((resk - resg) * h).abs();
    let resasc = resasc * hh;
    let resabs = resabs * hh;
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok((resk * h, err))
}

/// ∫_a^b f by adaptive bisection of the worst panel.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Integral> {
    if a == b {
        return Ok(Integral::zero());
    }
    if b < a {
        return integrate(f, b, a, tol).map(|r| r.scale(-1.0));
    }
    let (v, e) = gk21(&f, a, b)?;
    let mut evals = 21;
    let mut heap = BinaryHeap::new();
    let mut done: Vec<Segment> = Vec::new();
    heap.push(Segment { a, b, value: v, err: e });
    let mut total = v;
    let mut total_err = e;
    let mut intervals = 1;
    while total_err > tol.target(total) && intervals < tol.max_intervals {
        let Some(seg) = heap.pop() else { break };
        let mid = 0.5 * (seg.a + seg.b);
        if !(mid > seg.a && mid < seg.b) || (seg.b - seg.a) < 1e-15 * seg.a.abs().max(seg.b.abs()) {
            done.push(seg);
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let (v1, e1) = gk21(&f, seg.a, mid)?;
        let (v2, e2) = gk21(&f, mid, seg.b)?;
        evals += 42;
        intervals += 1;
        total += v1 + v2 - seg.value;
        total_err += e1 + e2 - seg.err;
        heap.push(Segment { a: seg.a, b: mid, value: v1, err: e1 });
        heap.push(Segment { a: mid, b: seg.b, value: v2, err: e2 });
    }
    done.extend(heap.into_vec());
    done.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value: f64 = done.iter().map(|s| s.value).sum();
    let abs_err: f64 = done.iter().map(|s| s.err).sum();
    Ok(Integral { value, abs_err, evals, converged: abs_err <= tol.target(value) })
}

/// ∫_a^b f for an integrand behaving like (x − a)^{e} near `a` (e > −1).
///
/// Substitutes x = a + (b − a)s^g with g = 2/(e + 1) so the transformed integrand
/// vanishes linearly at s = 0.
pub fn integrate_graded<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    exponent: f64,
    tol: Tolerance,
) -> Result<Integral> {
    if !(exponent > -1.0) {
        return crate::error::domain(format!(
            "integrand exponent {exponent} at the endpoint is not integrable"
        ));
    }
    let g = grading(exponent);
    if g == 1.0 {
        return integrate(f, a, b, tol);
    }
    let len = b - a;
    integrate(
        |s: f64| {
            if s <= 0.0 {
                return 0.0;
            }
            let sg1 = s.powf(g - 1.0);
            f(a + len * s * sg1) * len * g * sg1
        },
        0.0,
        1.0,
        tol,
    )
}

/// Grading exponent for an endpoint singularity t^{e}.
pub fn grading(exponent: f64) -> f64 {
    if exponent >= 1.0 {
        1.0
    } else {
        (2.0 / (exponent + 1.0)).min(12.0)
    }
}
