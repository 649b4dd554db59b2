use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Draws per reproducibility unit; independent of the thread count.
pub(crate) const BATCH: usize = 8192;

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Moments {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let d = other.mean - self.mean;
        let wa = self.count as f64;
        let wb = other.count as f64;
        self.mean += d * wb / n;
        self.m2 += other.m2 + d * d * wa * wb / n;
        self.count += other.count;
    }

    pub fn std_error(&self) -> f64 {
        if self.count < 2 {
            return f64::INFINITY;
        }
        let n = self.count as f64;
        (self.m2 / (n - 1.0) / n).sqrt()
    }
}

/// Generator for one work unit: the master seed picks the key, the unit
/// index picks the stream.
pub(crate) fn unit_rng(master_seed: u64, unit: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(unit);
    rng
}

/// Draw `samples` values of `width` statistics each, batch `b` from stream
/// `b`, and merge the batches in index order.
pub(crate) fn batched_moments<F>(samples: usize, width: usize, master_seed: u64, draw: F) -> Vec<Moments>
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]) + Sync,
{
    let batches = samples.div_ceil(BATCH);
    let parts: Vec<Vec<Moments>> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = unit_rng(master_seed, b as u64);
            let len = BATCH.min(samples - b * BATCH);
            let mut acc = vec![Moments::default(); width];
            let mut buf = vec![0.0; width];
            for _ in 0..len {
                draw(&mut rng, &mut buf);
                for (a, &x) in acc.iter_mut().zip(&buf) {
                    a.push(x);
                }
            }
            acc
        })
        .collect();
    let mut total = vec![Moments::default(); width];
    for part in &parts {
        for (t, p) in total.iter_mut().zip(part) {
            t.merge(p);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.1 - 3.0).collect();
        let mut whole = Moments::default();
        xs.iter().for_each(|&x| whole.push(x));
        let mut split = Moments::default();
        for chunk in xs.chunks(77) {
            let mut m = Moments::default();
            chunk.iter().for_each(|&x| m.push(x));
            split.merge(&m);
        }
        assert_eq!(split.count, whole.count);
        assert!((split.mean - whole.mean).abs() < 1e-13);
        assert!((split.m2 - whole.m2).abs() < 1e-9 * whole.m2);
    }

    #[test]
    fn streams_differ() {
        use rand::Rng;
        let a: u64 = unit_rng(7, 0).random();
        let b: u64 = unit_rng(7, 1).random();
        let c: u64 = unit_rng(7, 0).random();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }
}
