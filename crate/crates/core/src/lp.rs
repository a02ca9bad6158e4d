//! Dense exact simplex in slack form with Bland's rule.
//!
//! Solves `max c.x` subject to `A x <= b`, `x >= 0`.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, x: Vec<Rational> },
}

struct Tableau {
    // row i: x_{basic[i]} = b[i] - sum_j a[i][j] x_{nonbasic[j]}
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    c: Vec<Rational>,
    v: Rational,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, l: usize, e: usize) {
        let ale = self.a[l][e].clone();
        let inv = Rational::one() / &ale;
        self.b[l] = &self.b[l] * &inv;
        for j in 0..self.nonbasic.len() {
            if j != e {
                self.a[l][j] = &self.a[l][j] * &inv;
            }
        }
        self.a[l][e] = inv;
        let row_l = self.a[l].clone();
        let bl = self.b[l].clone();
        for i in 0..self.b.len() {
            if i == l || self.a[i][e].is_zero() {
                continue;
            }
            let aie = self.a[i][e].clone();
            self.b[i] = &self.b[i] - &aie * &bl;
            for (j, rl) in row_l.iter().enumerate() {
                if j == e {
                    self.a[i][j] = -(&aie * rl);
                } else if !rl.is_zero() {
                    self.a[i][j] = &self.a[i][j] - &aie * rl;
                }
            }
        }
        if !self.c[e].is_zero() {
            let ce = self.c[e].clone();
            self.v = &self.v + &ce * &bl;
            for (j, rl) in row_l.iter().enumerate() {
                if j == e {
                    self.c[j] = -(&ce * rl);
                } else if !rl.is_zero() {
                    self.c[j] = &self.c[j] - &ce * rl;
                }
            }
        }
        std::mem::swap(&mut self.basic[l], &mut self.nonbasic[e]);
    }

    /// Runs to optimality; `false` when unbounded.
    fn optimize(&mut self) -> bool {
        loop {
            let entering = (0..self.nonbasic.len())
                .filter(|&j| self.c[j].is_positive())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(e) = entering else { return true };
            let mut best: Option<(Rational, usize)> = None;
            for i in 0..self.b.len() {
                if self.a[i][e].is_positive() {
                    let ratio = &self.b[i] / &self.a[i][e];
                    let better = match &best {
                        None => true,
                        Some((r, bi)) => ratio < *r || (ratio == *r && self.basic[i] < self.basic[*bi]),
                    };
                    if better {
                        best = Some((ratio, i));
                    }
                }
            }
            match best {
                None => return false,
                Some((_, l)) => self.pivot(l, e),
            }
        }
    }

    fn value_of(&self, var: usize) -> Rational {
        match self.basic.iter().position(|&b| b == var) {
            Some(i) => self.b[i].clone(),
            None => Rational::zero(),
        }
    }
}

pub(crate) fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = b.len();
    // auxiliary variable x0 gets id n + m
    let x0 = n + m;
    let min_row = (0..m).min_by(|&i, &j| b[i].cmp(&b[j]));
    let needs_phase1 = min_row.map(|i| b[i].is_negative()).unwrap_or(false);
    let mut t = Tableau {
        a: a.to_vec(),
        b: b.to_vec(),
        c: c.to_vec(),
        v: Rational::zero(),
        basic: (n..n + m).collect(),
        nonbasic: (0..n).collect(),
    };
    if needs_phase1 {
        for row in t.a.iter_mut() {
            row.push(-Rational::one());
        }
        t.nonbasic.push(x0);
        t.c = vec![Rational::zero(); n + 1];
        t.c[n] = -Rational::one();
        t.pivot(min_row.unwrap(), n);
        t.optimize();
        if !t.v.is_zero() {
            return LpOutcome::Infeasible;
        }
        if let Some(i) = t.basic.iter().position(|&v| v == x0) {
            match (0..t.nonbasic.len())
                .filter(|&j| !t.a[i][j].is_zero())
                .min_by_key(|&j| t.nonbasic[j])
            {
                Some(e) => t.pivot(i, e),
                None => {
                    // x0 is identically zero on this row
                    t.a.remove(i);
                    t.b.remove(i);
                    t.basic.remove(i);
                }
            }
        }
        if let Some(col) = t.nonbasic.iter().position(|&v| v == x0) {
            for row in t.a.iter_mut() {
                row.remove(col);
            }
            t.nonbasic.remove(col);
        }
        // rewrite the original objective in terms of the current nonbasic variables
        t.c = vec![Rational::zero(); t.nonbasic.len()];
        t.v = Rational::zero();
        for (var, cv) in c.iter().enumerate() {
            if cv.is_zero() {
                continue;
            }
            if let Some(j) = t.nonbasic.iter().position(|&x| x == var) {
                t.c[j] = &t.c[j] + cv;
            } else {
                let i = t.basic.iter().position(|&x| x == var).unwrap();
                t.v = &t.v + cv * &t.b[i];
                for j in 0..t.nonbasic.len() {
                    t.c[j] = &t.c[j] - cv * &t.a[i][j];
                }
            }
        }
    }
    if !t.optimize() {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal {
        value: t.v.clone(),
        x: (0..n).map(|j| t.value_of(j)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn textbook_problem() {
        // max 3x + y + 2z, x+y+3z<=30, 2x+2y+5z<=24, 4x+y+2z<=36
        let out = maximize(&r(&[3, 1, 2]), &[r(&[1, 1, 3]), r(&[2, 2, 5]), r(&[4, 1, 2])], &r(&[30, 24, 36]));
        match out {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, int(28));
                assert_eq!(x, vec![int(8), int(4), int(0)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn phase_one() {
        // max 2x - y, 2x - y <= 2, x - 5y <= -4
        let out = maximize(&r(&[2, -1]), &[r(&[2, -1]), r(&[1, -5])], &r(&[2, -4]));
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(2)),
            other => panic!("{other:?}"),
        }
        let out = maximize(&r(&[1]), &[r(&[1]), r(&[-1])], &r(&[1, -2]));
        assert_eq!(out, LpOutcome::Infeasible);
        let out = maximize(&[int(1), int(0)], &[vec![rat(1, 2), int(-1)]], &[int(1)]);
        assert_eq!(out, LpOutcome::Unbounded);
    }
}
