//! Poisson versus Polya failure processes observed through their first `n`
//! event times.
//!
//! Under perfect repair the counting process is homogeneous Poisson with
//! rate `lambda`; the self-exciting alternative is the Polya process with
//! intensity `(1 + N(t-)) lambda / (1 + lambda t)`, scaled so that both
//! processes share the expectation function `E[N(t)] = lambda t`. In both
//! cases the final event time `T_n` is sufficient, and the LR is a
//! non-monotone function of it with minimum at `t = n / lambda`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Exp};

use crate::lr::LrDistribution;
use crate::{Class, Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct PointProcessPair {
    rate: f64,
    failures: usize,
}

impl PointProcessPair {
    pub fn new(rate: f64, failures: usize) -> Result<Self> {
        if rate <= 0.0 || !rate.is_finite() {
            return Err(Error::InvalidModel(format!(
                "rate must be positive and finite (got {rate})"
            )));
        }
        if failures == 0 {
            return Err(Error::InvalidModel(
                "need at least one observed failure".to_string(),
            ));
        }
        Ok(PointProcessPair { rate, failures })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn failures(&self) -> usize {
        self.failures
    }

    /// LR value `e^{lambda t} / (1 + lambda t)^{n+1}` at final event time
    /// `t`. The data enter only through `T_n`.
    pub fn lr(&self, t_n: f64) -> Result<f64> {
        Ok(self.log_lr(t_n)?.exp())
    }

    pub fn log_lr(&self, t_n: f64) -> Result<f64> {
        if t_n <= 0.0 || !t_n.is_finite() {
            return Err(Error::InvalidModel(format!(
                "final event time must be positive and finite (got {t_n})"
            )));
        }
        let lt = self.rate * t_n;
        Ok(lt - (self.failures as f64 + 1.0) * lt.ln_1p())
    }

    /// Simulates the first `failures` event times under the given class and
    /// returns the final one.
    pub fn sample_final_time(&self, class: Class, rng: &mut impl Rng) -> f64 {
        match class {
            Class::Minus => {
                let exp = Exp::new(self.rate).unwrap();
                (0..self.failures).map(|_| exp.sample(rng)).sum()
            }
            Class::Plus => {
                let mut t = 0.0;
                for k in 0..self.failures {
                    t = self.next_polya_event(t, k, rng);
                }
                t
            }
        }
    }

    /// Inverts the conditional survival of the next Polya inter-event time:
    /// given `k` events by time `t`, `P(T_{k+1} > s | t) =
    /// ((1 + lambda t)/(1 + lambda s))^{k+1}`.
    fn next_polya_event(&self, t: f64, events_so_far: usize, rng: &mut impl Rng) -> f64 {
        let u: f64 = 1.0 - rng.random::<f64>(); // in (0, 1]
        let growth = u.powf(-1.0 / (events_so_far as f64 + 1.0));
        ((1.0 + self.rate * t) * growth - 1.0) / self.rate
    }

    /// Number of events observed in `[0, horizon]` under the given class.
    pub fn count_at(&self, class: Class, horizon: f64, rng: &mut impl Rng) -> u64 {
        let mut t = 0.0;
        let mut count = 0u64;
        loop {
            let next = match class {
                Class::Minus => t + Exp::new(self.rate).unwrap().sample(rng),
                Class::Plus => self.next_polya_event(t, count as usize, rng),
            };
            if next > horizon {
                return count;
            }
            t = next;
            count += 1;
        }
    }

    /// `n_rep` LR draws under each process, sampling `T_n` event by event
    /// and mapping it through [`lr`](Self::lr). Deterministic given the
    /// seed.
    pub fn lr_sample(&self, n_rep: usize, seed: u64) -> Result<LrDistribution> {
        if n_rep == 0 {
            return Err(Error::InvalidModel(
                "need at least one replication".to_string(),
            ));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let draw = |class: Class, rng: &mut ChaCha12Rng| -> Result<Vec<f64>> {
            (0..n_rep)
                .map(|_| self.lr(self.sample_final_time(class, rng)))
                .collect()
        };
        let minus = draw(Class::Minus, &mut rng)?;
        let plus = draw(Class::Plus, &mut rng)?;
        LrDistribution::from_samples(minus, plus)
    }
}
