//! Random tournaments and preference profiles.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::profile::{LinearOrder, Profile};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    UniformTournament,
    Ic,
    Iac,
    Mallows,
    Spatial,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CultureSpec {
    pub model: Model,
    pub n: usize,
    pub voters: usize,
    pub phi: f64,
    pub dims: usize,
    pub seed: u64,
}

impl CultureSpec {
    pub fn new(model: Model, n: usize, seed: u64) -> Self {
        CultureSpec { model, n, voters: 51, phi: 0.5, dims: 2, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Invalid("n must be at least 1".into()));
        }
        if self.model != Model::UniformTournament && self.voters == 0 {
            return Err(Error::Invalid("voters must be at least 1".into()));
        }
        if self.model == Model::Mallows && !(self.phi > 0.0 && self.phi <= 1.0) {
            return Err(Error::Invalid(format!("phi must lie in (0,1], got {}", self.phi)));
        }
        if self.model == Model::Spatial && self.dims == 0 {
            return Err(Error::Invalid("dims must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Sample {
    Tournament(Digraph),
    Profile(Profile),
}

pub fn sample<R: Rng + ?Sized>(spec: &CultureSpec, rng: &mut R) -> Result<Sample> {
    spec.validate()?;
    let (n, k) = (spec.n, spec.voters);
    let voters = match spec.model {
        Model::UniformTournament => return Ok(Sample::Tournament(uniform_tournament(n, rng))),
        Model::Ic => (0..k).map(|_| ic_order(n, rng)).collect(),
        Model::Iac => iac_orders(n, k, rng),
        Model::Mallows => {
            let reference = LinearOrder::identity(n);
            (0..k).map(|_| mallows_order(&reference, spec.phi, rng)).collect()
        }
        Model::Spatial => spatial_orders(n, k, spec.dims, rng),
    };
    Ok(Sample::Profile(Profile::new(n, voters)?))
}

/// Each pair oriented by a fair coin.
pub fn uniform_tournament<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Digraph {
    let mut g = Digraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<bool>() {
                g.add_arc(u, v);
            } else {
                g.add_arc(v, u);
            }
        }
    }
    g
}

pub fn ic_order<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LinearOrder {
    let mut r: Vec<usize> = (0..n).collect();
    r.shuffle(rng);
    LinearOrder::new(r).expect("shuffle is a permutation")
}

/// Pólya urn: one ball per order initially, each draw adds a copy.
pub fn iac_orders<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<LinearOrder> {
    let orders_f = (1..=n).map(|i| i as f64).product::<f64>();
    let mut drawn: Vec<LinearOrder> = Vec::with_capacity(k);
    for j in 0..k {
        // j copies added so far on top of n! initial balls
        let fresh = if orders_f.is_finite() { orders_f / (orders_f + j as f64) } else { 1.0 };
        let o = if j == 0 || rng.gen::<f64>() < fresh { ic_order(n, rng) } else { drawn[rng.gen_range(0..j)].clone() };
        drawn.push(o);
    }
    drawn
}

/// Weights for inserting the j-th item (0-based) at positions 0..=j.
pub fn rim_insertion_weights(j: usize, phi: f64) -> Vec<f64> {
    (0..=j).map(|i| phi.powi((j - i) as i32)).collect()
}

/// Repeated insertion model around `reference`.
pub fn mallows_order<R: Rng + ?Sized>(reference: &LinearOrder, phi: f64, rng: &mut R) -> LinearOrder {
    let items = reference.ranking();
    let mut out: Vec<usize> = Vec::with_capacity(items.len());
    for (j, &item) in items.iter().enumerate() {
        let w = rim_insertion_weights(j, phi);
        let total: f64 = w.iter().sum();
        let mut x = rng.gen::<f64>() * total;
        let mut pos = j;
        for (i, wi) in w.iter().enumerate() {
            if x < *wi {
                pos = i;
                break;
            }
            x -= wi;
        }
        out.insert(pos, item);
    }
    LinearOrder::new(out).expect("insertion keeps a permutation")
}

/// Voters and alternatives uniform in the unit cube; closer is better.
pub fn spatial_orders<R: Rng + ?Sized>(n: usize, k: usize, dims: usize, rng: &mut R) -> Vec<LinearOrder> {
    let alts: Vec<Vec<f64>> = (0..n).map(|_| (0..dims).map(|_| rng.gen()).collect()).collect();
    (0..k)
        .map(|_| {
            let me: Vec<f64> = (0..dims).map(|_| rng.gen()).collect();
            let d: Vec<f64> = alts.iter().map(|a| a.iter().zip(&me).map(|(x, y)| (x - y) * (x - y)).sum()).collect();
            let mut r: Vec<usize> = (0..n).collect();
            r.sort_by(|&a, &b| d[a].total_cmp(&d[b]).then(a.cmp(&b)));
            LinearOrder::new(r).expect("sorted ids")
        })
        .collect()
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Arc i -> j iff i - j is a nonzero quadratic residue mod p.
pub fn qr_tournament(p: u64) -> Result<Digraph> {
    if !is_prime(p) || p % 4 != 3 {
        return Err(Error::Invalid(format!("{p} is not a prime congruent to 3 mod 4")));
    }
    if p > 1 << 20 {
        return Err(Error::Cap(format!("p={p} too large")));
    }
    let n = p as usize;
    Ok(Digraph::from_fn(n, |i, j| {
        let diff = (i as u64 + p - j as u64) % p;
        mod_pow(diff, (p - 1) / 2, p) == 1
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn qr_small() {
        let q3 = qr_tournament(3).unwrap();
        assert!(q3.is_tournament() && !q3.is_transitive());
        let q7 = qr_tournament(7).unwrap();
        assert!((0..7).all(|v| q7.out_degree(v) == 3));
        assert!(qr_tournament(5).is_err());
        assert!(qr_tournament(15).is_err());
    }

    #[test]
    fn mallows_phi_one_is_uniform() {
        for j in 0..8 {
            assert!(rim_insertion_weights(j, 1.0).iter().all(|&w| w == 1.0));
        }
    }

    #[test]
    fn samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for model in [Model::Ic, Model::Iac, Model::Mallows, Model::Spatial] {
            let mut spec = CultureSpec::new(model, 6, 7);
            spec.voters = 9;
            match sample(&spec, &mut rng).unwrap() {
                Sample::Profile(p) => assert_eq!((p.n(), p.k()), (6, 9)),
                Sample::Tournament(_) => panic!("expected a profile"),
            }
        }
        let spec = CultureSpec::new(Model::UniformTournament, 5, 1);
        match sample(&spec, &mut rng).unwrap() {
            Sample::Tournament(t) => assert!(t.is_tournament()),
            Sample::Profile(_) => panic!("expected a tournament"),
        }
    }

    #[test]
    fn bad_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut spec = CultureSpec::new(Model::Mallows, 4, 0);
        spec.phi = 0.0;
        assert!(sample(&spec, &mut rng).is_err());
        spec.phi = 1.5;
        assert!(sample(&spec, &mut rng).is_err());
        let mut spec = CultureSpec::new(Model::Spatial, 4, 0);
        spec.dims = 0;
        assert!(sample(&spec, &mut rng).is_err());
    }
}
