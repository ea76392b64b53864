//! Independent brute-force oracle for the three rankers: a straight-line
//! transcription of the scoring formulas with its own normalization code,
//! sharing nothing with the library implementation. Test-only.

use vho_core::decision::{
    AttributeSpec, DecisionMatrix, Direction, Method, ValueModel, WeightVector,
};

/// Minimal deterministic generator so the oracle path depends on nothing
/// from the crate under test.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed.max(1))
    }

    fn next_u64(&mut self) -> u64 {
        // Knuth MMIX constants
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + u * (hi - lo)
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next_u64() as usize) % (hi - lo + 1)
    }

    pub fn flip(&mut self) -> bool {
        self.next_u64() & 1 == 0
    }
}

pub fn random_instance(rng: &mut Lcg) -> (DecisionMatrix, WeightVector) {
    let n_alt = rng.range(3, 6);
    let n_attr = rng.range(2, 4);
    let attributes: Vec<AttributeSpec> = (0..n_attr)
        .map(|j| AttributeSpec {
            name: format!("a{j}"),
            units: String::new(),
            direction: if rng.flip() {
                Direction::Benefit
            } else {
                Direction::Cost
            },
            value_model: ValueModel::Fixed(0.0),
        })
        .collect();
    let values: Vec<Vec<f64>> = (0..n_alt)
        .map(|_| (0..n_attr).map(|_| rng.uniform(0.1, 100.0)).collect())
        .collect();
    let raw: Vec<f64> = (0..n_attr).map(|_| rng.uniform(0.1, 1.0)).collect();
    let m = DecisionMatrix::new(
        (0..n_alt).map(|i| format!("N{i}")).collect(),
        attributes,
        values,
    )
    .unwrap();
    (m, WeightVector::normalized(&raw).unwrap())
}

fn minmax(m: &DecisionMatrix) -> Vec<Vec<f64>> {
    let n = m.values.len();
    let k = m.attributes.len();
    let mut out = vec![vec![0.0; k]; n];
    for j in 0..k {
        let mut max = f64::NEG_INFINITY;
        let mut min = f64::INFINITY;
        for i in 0..n {
            max = max.max(m.values[i][j]);
            min = min.min(m.values[i][j]);
        }
        for i in 0..n {
            out[i][j] = if max == min {
                1.0
            } else if m.attributes[j].direction == Direction::Benefit {
                (m.values[i][j] - min) / (max - min)
            } else {
                (max - m.values[i][j]) / (max - min)
            };
        }
    }
    out
}

fn topsis_scores(m: &DecisionMatrix, w: &WeightVector) -> Vec<f64> {
    let n = m.values.len();
    let k = m.attributes.len();
    let mut t = vec![vec![0.0; k]; n];
    for j in 0..k {
        let mut ss = 0.0;
        for i in 0..n {
            ss += m.values[i][j] * m.values[i][j];
        }
        let norm = ss.sqrt();
        for i in 0..n {
            t[i][j] = w[j] * m.values[i][j] / norm;
        }
    }
    let mut plus = vec![0.0; k];
    let mut minus = vec![0.0; k];
    for j in 0..k {
        let mut max = f64::NEG_INFINITY;
        let mut min = f64::INFINITY;
        for i in 0..n {
            max = max.max(t[i][j]);
            min = min.min(t[i][j]);
        }
        if m.attributes[j].direction == Direction::Benefit {
            plus[j] = max;
            minus[j] = min;
        } else {
            plus[j] = min;
            minus[j] = max;
        }
    }
    (0..n)
        .map(|i| {
            let mut dp = 0.0;
            let mut dm = 0.0;
            for j in 0..k {
                dp += (t[i][j] - plus[j]).powi(2);
                dm += (t[i][j] - minus[j]).powi(2);
            }
            let (dp, dm) = (dp.sqrt(), dm.sqrt());
            if dp + dm == 0.0 {
                0.5
            } else {
                dm / (dp + dm)
            }
        })
        .collect()
}

fn gra_scores(m: &DecisionMatrix, w: &WeightVector) -> Vec<f64> {
    let r = minmax(m);
    let xi = 0.5;
    let mut d_min = f64::INFINITY;
    let mut d_max = f64::NEG_INFINITY;
    for row in &r {
        for &v in row {
            let d = (1.0 - v).abs();
            d_min = d_min.min(d);
            d_max = d_max.max(d);
        }
    }
    r.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, &v)| {
                    let d = (1.0 - v).abs();
                    let gamma = if d_max == 0.0 {
                        1.0
                    } else {
                        (d_min + xi * d_max) / (d + xi * d_max)
                    };
                    w[j] * gamma
                })
                .sum()
        })
        .collect()
}

fn dia_scores(m: &DecisionMatrix, w: &WeightVector) -> Vec<f64> {
    let r = minmax(m);
    let n = r.len();
    let k = m.attributes.len();
    let mut pia = vec![f64::NEG_INFINITY; k];
    for j in 0..k {
        for row in &r {
            pia[j] = pia[j].max(w[j] * row[j]);
        }
    }
    (0..n)
        .map(|i| {
            (0..k)
                .map(|j| (w[j] * r[i][j] - pia[j]).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .collect()
}

pub fn rank_bruteforce(method: Method, m: &DecisionMatrix, w: &WeightVector) -> Vec<f64> {
    match method {
        Method::Topsis => topsis_scores(m, w),
        Method::Gra => gra_scores(m, w),
        Method::Dia => dia_scores(m, w),
    }
}
