//! Dense reference implementations used as test oracles. Nothing here calls
//! into the walk operator under test.
#![allow(dead_code, clippy::needless_range_loop)]

use borromean::{BasisLabel, Coin, LatticeConfig, PureState};
use num_complex::Complex64 as C;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const TWO_PI_3: f64 = 2.0 * std::f64::consts::PI / 3.0;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub enum DenseFree {
    Identity,
    Hadamard,
}

/// `index = Σ_i (2·x_i + c_i)·(2d)^{N−1−i}`.
pub fn dense_index(positions: &[usize], coins: &[usize], d: usize) -> usize {
    positions
        .iter()
        .zip(coins)
        .fold(0, |acc, (&x, &c)| acc * 2 * d + 2 * x + c)
}

pub fn dense_unindex(mut idx: usize, n: usize, d: usize) -> (Vec<usize>, Vec<usize>) {
    let mut pos = vec![0; n];
    let mut coins = vec![0; n];
    for i in (0..n).rev() {
        let site = idx % (2 * d);
        idx /= 2 * d;
        pos[i] = site / 2;
        coins[i] = site % 2;
    }
    (pos, coins)
}

/// 4x4 pair operator `I + (e^{iφ}−1)|++⟩⟨++|`; `|++⟩ = (1,1,1,1)/2`.
fn pair_op(phi: f64) -> [[C; 4]; 4] {
    let k = (C::from_polar(1.0, phi) - 1.0) / 4.0;
    let mut m = [[k; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] += 1.0;
    }
    m
}

/// Coin operator `C(x)` on `2^N` coins (bit of particle i at N−1−i), built
/// by multiplying pair operators one at a time in the given pair order.
pub fn dense_coin_op(
    positions: &[usize],
    phi: f64,
    free: &DenseFree,
    pair_order: &[(usize, usize)],
) -> Vec<Vec<C>> {
    let n = positions.len();
    let dim = 1 << n;
    let mut op: Vec<Vec<C>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
                .collect()
        })
        .collect();
    let g = pair_op(phi);
    let bit = |idx: usize, i: usize| (idx >> (n - 1 - i)) & 1;
    for &(i, j) in pair_order {
        if positions[i] != positions[j] {
            continue;
        }
        let mut emb = vec![vec![c(0.0, 0.0); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let others = !((1 << (n - 1 - i)) | (1 << (n - 1 - j)));
                if a & others != b & others {
                    continue;
                }
                emb[a][b] = g[2 * bit(a, i) + bit(a, j)][2 * bit(b, i) + bit(b, j)];
            }
        }
        op = matmul(&emb, &op);
    }
    if let DenseFree::Hadamard = free {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = [[s, s], [s, -s]];
        for i in 0..n {
            if positions
                .iter()
                .enumerate()
                .any(|(j, &x)| j != i && x == positions[i])
            {
                continue;
            }
            let mut emb = vec![vec![c(0.0, 0.0); dim]; dim];
            for a in 0..dim {
                for b in 0..dim {
                    let others = !(1 << (n - 1 - i));
                    if a & others == b & others {
                        emb[a][b] = c(h[bit(a, i)][bit(b, i)], 0.0);
                    }
                }
            }
            op = matmul(&emb, &op);
        }
    }
    op
}

pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub fn matmul(a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![c(0.0, 0.0); m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            let x = a[i][k];
            if x == c(0.0, 0.0) {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[k][j];
            }
        }
    }
    out
}

/// Dense `U = S^{⊗N} C(x)` on `(2d)^N` dimensions.
pub fn dense_step(n: usize, d: usize, phi: f64, free: DenseFree) -> Vec<Vec<C>> {
    let dim = (2 * d).pow(n as u32);
    let mut u = vec![vec![c(0.0, 0.0); dim]; dim];
    let pairs = all_pairs(n);
    let mut positions = vec![0usize; n];
    loop {
        let cop = dense_coin_op(&positions, phi, &free, &pairs);
        let shifted = |coins: &[usize]| -> Vec<usize> {
            positions
                .iter()
                .zip(coins)
                .map(|(&x, &cn)| if cn == 0 { (x + 1) % d } else { (x + d - 1) % d })
                .collect()
        };
        for col in 0..1 << n {
            let cin: Vec<usize> = (0..n).map(|i| (col >> (n - 1 - i)) & 1).collect();
            let src = dense_index(&positions, &cin, d);
            for row in 0..1 << n {
                let z = cop[row][col];
                if z == c(0.0, 0.0) {
                    continue;
                }
                let cout: Vec<usize> = (0..n).map(|i| (row >> (n - 1 - i)) & 1).collect();
                let dst = dense_index(&shifted(&cout), &cout, d);
                u[dst][src] += z;
            }
        }
        // next position tuple
        let mut i = n;
        loop {
            if i == 0 {
                return u;
            }
            i -= 1;
            positions[i] += 1;
            if positions[i] < d {
                break;
            }
            positions[i] = 0;
        }
    }
}

/// Diagonal projector onto collective labels, applied after `u`.
pub fn dense_project(u: &[Vec<C>], n: usize, d: usize) -> Vec<Vec<C>> {
    let mut out = u.to_vec();
    for (row, line) in out.iter_mut().enumerate() {
        let (p, cs) = dense_unindex(row, n, d);
        let collective = p.windows(2).all(|w| w[0] == w[1]) && cs.windows(2).all(|w| w[0] == w[1]);
        if !collective {
            line.iter_mut().for_each(|z| *z = c(0.0, 0.0));
        }
    }
    out
}

pub fn to_dense(s: &PureState<f64>) -> Vec<C> {
    let n = s.config().particle_count();
    let d = s.config().site_count();
    let mut v = vec![c(0.0, 0.0); (2 * d).pow(n as u32)];
    for (l, a) in s.iter() {
        let coins: Vec<usize> = l.coins().iter().map(|c| c.index()).collect();
        v[dense_index(l.positions(), &coins, d)] = *a;
    }
    v
}

pub fn apply_dense(m: &[Vec<C>], v: &[C]) -> Vec<C> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(c(0.0, 0.0), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn dense_distance(a: &[C], b: &[C]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn random_label(rng: &mut ChaCha8Rng, n: usize, d: usize) -> BasisLabel {
    let cfg = LatticeConfig::new(n, d, 1.0).unwrap();
    let pos: Vec<i64> = (0..n).map(|_| rng.gen_range(0..d as i64)).collect();
    let coins: Vec<Coin> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Coin::Left
            } else {
                Coin::Right
            }
        })
        .collect();
    BasisLabel::new(&cfg, &pos, &coins).unwrap()
}

/// Normalized random state on up to `terms` labels. Co-location is made
/// likely by drawing positions from a few sites.
pub fn random_state(rng: &mut ChaCha8Rng, config: LatticeConfig<f64>, terms: usize) -> PureState<f64> {
    let n = config.particle_count();
    let d = config.site_count();
    let spread = rng.gen_range(1..=d);
    let entries: Vec<_> = (0..terms)
        .map(|_| {
            let mut l = random_label(rng, n, spread.max(2).min(d));
            if spread == 1 {
                let cfg = LatticeConfig::new(n, d, 1.0).unwrap();
                let x = rng.gen_range(0..d as i64);
                l = BasisLabel::new(&cfg, &vec![x; n], l.coins()).unwrap();
            }
            (l, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        })
        .collect();
    PureState::from_amplitudes(config, entries).unwrap().normalized()
}
