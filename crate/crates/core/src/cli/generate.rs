//! Seeded random expressions.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::terms::{Letter, RankedAlphabet, RegExpr};

/// Relative frequencies of the expression operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorWeights {
    pub constant: f64,
    pub apply: f64,
    pub sum: f64,
    pub product: f64,
    pub closure: f64,
}

impl Default for OperatorWeights {
    fn default() -> Self {
        OperatorWeights {
            constant: 2.0,
            apply: 3.0,
            sum: 1.5,
            product: 1.5,
            closure: 1.5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub max_ast_nodes: usize,
    pub alphabet: RankedAlphabet,
    pub seed: u64,
    pub weights: OperatorWeights,
}

impl GeneratorConfig {
    pub fn new(alphabet: RankedAlphabet, seed: u64) -> Self {
        GeneratorConfig {
            max_ast_nodes: 12,
            alphabet,
            seed,
            weights: OperatorWeights::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        let w = &self.weights;
        let all = [w.constant, w.apply, w.sum, w.product, w.closure];
        if all.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::Generator("weights must be finite and nonnegative".into()));
        }
        if all.iter().all(|x| *x == 0.0) {
            return Err(Error::Generator("all operator weights are zero".into()));
        }
        if self.max_ast_nodes == 0 {
            return Err(Error::Generator("max_ast_nodes must be positive".into()));
        }
        if self.alphabet.constants().next().is_none() {
            return Err(Error::Generator(
                "the alphabet has no constant, so no expression has a leaf".into(),
            ));
        }
        Ok(())
    }
}

/// A stream of expressions drawn from one seeded generator.
pub struct Generator {
    config: GeneratorConfig,
    constants: Vec<String>,
    symbols: Vec<(String, usize)>,
    rng: ChaCha8Rng,
}

#[derive(Clone, Copy)]
enum Op {
    Constant,
    Apply,
    Sum,
    Product,
    Closure,
}

impl Generator {
    pub fn new(config: GeneratorConfig) -> Result<Self> {
        config.validate()?;
        let constants = config.alphabet.constants().map(str::to_string).collect();
        let symbols = config
            .alphabet
            .non_constants()
            .map(|(s, a)| (s.to_string(), a))
            .collect();
        let rng = ChaCha8Rng::seed_from_u64(config.seed);
        Ok(Generator {
            config,
            constants,
            symbols,
            rng,
        })
    }

    /// The next expression, with at most `max_ast_nodes` nodes.
    pub fn next_expr(&mut self) -> RegExpr {
        let budget = self.rng.gen_range(1..=self.config.max_ast_nodes);
        self.expr(budget)
    }

    fn constant(&mut self) -> String {
        let i = self.rng.gen_range(0..self.constants.len());
        self.constants[i].clone()
    }

    fn expr(&mut self, budget: usize) -> RegExpr {
        let w = self.config.weights;
        let min_arity = self.symbols.iter().map(|s| s.1).min();
        let candidates = [
            (Op::Constant, w.constant, true),
            (Op::Apply, w.apply, min_arity.is_some_and(|m| budget > m)),
            (Op::Sum, w.sum, budget >= 3),
            (Op::Product, w.product, budget >= 3),
            (Op::Closure, w.closure, budget >= 2),
        ];
        let feasible: Vec<(Op, f64)> = candidates
            .iter()
            .filter(|c| c.2 && c.1 > 0.0)
            .map(|c| (c.0, c.1))
            .collect();
        // a leaf is always possible, whatever its weight
        let op = match WeightedIndex::new(feasible.iter().map(|c| c.1)) {
            Ok(dist) => feasible[dist.sample(&mut self.rng)].0,
            Err(_) => Op::Constant,
        };
        match op {
            Op::Constant => RegExpr::constant(self.constant()),
            Op::Apply => {
                let fitting: Vec<(String, usize)> =
                    self.symbols.iter().filter(|s| s.1 < budget).cloned().collect();
                let (name, arity) = fitting[self.rng.gen_range(0..fitting.len())].clone();
                let sizes = self.split(budget - 1, arity);
                let args = sizes.into_iter().map(|s| self.expr(s)).collect();
                RegExpr::apply(Letter::plain(name), args)
            }
            Op::Sum | Op::Product => {
                let left = self.rng.gen_range(1..=budget - 2);
                let l = self.expr(left);
                let r = self.expr(budget - 1 - left);
                match op {
                    Op::Sum => RegExpr::sum(l, r),
                    _ => RegExpr::Product(Box::new(l), self.constant(), Box::new(r)),
                }
            }
            Op::Closure => {
                let x = self.expr(budget - 1);
                RegExpr::closure(x, self.constant())
            }
        }
    }

    /// `total` split into `parts` positive budgets.
    fn split(&mut self, total: usize, parts: usize) -> Vec<usize> {
        let mut sizes = vec![1; parts];
        for _ in 0..total - parts {
            let i = self.rng.gen_range(0..parts);
            sizes[i] += 1;
        }
        sizes
    }
}

impl Iterator for Generator {
    type Item = RegExpr;

    fn next(&mut self) -> Option<RegExpr> {
        Some(self.next_expr())
    }
}

/// One expression from a fresh generator.
pub fn generate_expr(config: &GeneratorConfig) -> Result<RegExpr> {
    Ok(Generator::new(config.clone())?.next_expr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse_alphabet, parse_expr};

    fn config(seed: u64) -> GeneratorConfig {
        GeneratorConfig::new(parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2").unwrap(), seed)
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(generate_expr(&config(42)).unwrap(), generate_expr(&config(42)).unwrap());
        let a: Vec<RegExpr> = Generator::new(config(7)).unwrap().take(20).collect();
        let b: Vec<RegExpr> = Generator::new(config(7)).unwrap().take(20).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn samples_are_well_formed_and_round_trip() {
        let cfg = config(1);
        let mut kinds = [false; 5];
        for e in Generator::new(cfg.clone()).unwrap().take(1000) {
            assert!(e.size() <= cfg.max_ast_nodes);
            assert!(!e.has_inner_zero() && !e.is_zero());
            assert_eq!(parse_expr(&e.to_string(), &cfg.alphabet).unwrap(), e, "{e}");
            fn mark(e: &RegExpr, kinds: &mut [bool; 5]) {
                match e {
                    RegExpr::Zero => {}
                    RegExpr::Const(_) => kinds[0] = true,
                    RegExpr::Apply { args, .. } => {
                        kinds[1] = true;
                        args.iter().for_each(|a| mark(a, kinds));
                    }
                    RegExpr::Sum(l, r) => {
                        kinds[2] = true;
                        mark(l, kinds);
                        mark(r, kinds);
                    }
                    RegExpr::Product(l, _, r) => {
                        kinds[3] = true;
                        mark(l, kinds);
                        mark(r, kinds);
                    }
                    RegExpr::Closure(x, _) => {
                        kinds[4] = true;
                        mark(x, kinds);
                    }
                }
            }
            mark(&e, &mut kinds);
        }
        assert_eq!(kinds, [true; 5]);
    }

    #[test]
    fn unsatisfiable_configs() {
        let mut cfg = config(0);
        cfg.alphabet = parse_alphabet("f:1").unwrap();
        assert!(matches!(generate_expr(&cfg), Err(Error::Generator(_))));
        let mut cfg = config(0);
        cfg.weights.sum = -1.0;
        assert!(generate_expr(&cfg).is_err());
        let mut cfg = config(0);
        cfg.max_ast_nodes = 0;
        assert!(generate_expr(&cfg).is_err());
    }
}
