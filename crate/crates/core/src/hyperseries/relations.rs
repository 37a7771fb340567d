use rug::Float;

use super::{ComponentVector, FamilyKind};

/// |LHS − RHS| of one named identity. Determinant identities hold only up
/// to a global sign, so their residual is taken against the nearer sign,
/// which is recorded.
#[derive(Debug, Clone)]
pub struct RelationResidual {
    pub name: &'static str,
    pub residual: Float,
    pub sign: Option<i32>,
}

#[derive(Debug, Clone, Default)]
pub struct RelationReport {
    pub entries: Vec<RelationResidual>,
}

impl RelationReport {
    pub fn get(&self, name: &str) -> Option<&RelationResidual> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn max_residual(&self) -> Option<&RelationResidual> {
        self.entries.iter().max_by(|a, b| a.residual.partial_cmp(&b.residual).expect("finite residuals"))
    }

    /// Names whose residual is at or above `threshold`.
    pub fn failures(&self, threshold: &Float) -> Vec<&'static str> {
        self.entries.iter().filter(|e| e.residual.partial_cmp(threshold) != Some(std::cmp::Ordering::Less)).map(|e| e.name).collect()
    }

    fn push(&mut self, name: &'static str, lhs: Float, rhs: Float) {
        let residual = Float::with_val(lhs.prec(), &lhs - &rhs).abs();
        self.entries.push(RelationResidual { name, residual, sign: None });
    }

    fn push_signed(&mut self, name: &'static str, lhs: Float, rhs: Float) {
        let plus = Float::with_val(lhs.prec(), &lhs - &rhs).abs();
        let minus = Float::with_val(lhs.prec(), &lhs + &rhs).abs();
        let (residual, sign) = if plus <= minus { (plus, 1) } else { (minus, -1) };
        self.entries.push(RelationResidual { name, residual, sign: Some(sign) });
    }
}

struct Ctx {
    prec: u32,
}

impl Ctx {
    fn mul(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.prec, a * b)
    }

    /// x_i y_j − x_j y_i
    fn minor(&self, x: &[Float], y: &[Float], i: usize, j: usize) -> Float {
        self.mul(&x[i], &y[j]) - self.mul(&x[j], &y[i])
    }

    /// (−1)^{top/2} Σ_{i≤top} (−1)^i xᵢ y_{top−i}; top = 2 gives x₁y₁ − x₀y₂ − x₂y₀,
    /// top = 4 gives x₀y₄ − x₁y₃ + x₂y₂ − x₃y₁ + x₄y₀.
    fn paren(&self, x: &[Float], y: &[Float], top: usize) -> Float {
        let mut acc = Float::new(self.prec);
        for i in 0..=top {
            let term = self.mul(&x[i], &y[top - i]);
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if (top / 2) % 2 == 1 {
            -acc
        } else {
            acc
        }
    }

    fn det3(&self, rows: [&[Float; 3]; 3]) -> Float {
        let [r0, r1, r2] = rows;
        let m = |a: &Float, b: &Float, c: &Float, d: &Float| self.mul(a, d) - self.mul(b, c);
        self.mul(&r0[0], &m(&r1[1], &r1[2], &r2[1], &r2[2])) - self.mul(&r0[1], &m(&r1[0], &r1[2], &r2[0], &r2[2]))
            + self.mul(&r0[2], &m(&r1[0], &r1[1], &r2[0], &r2[1]))
    }
}

/// Every named component relation of the family at the evaluated point.
/// The ₇F₆ case has no relation theory and yields an empty report.
pub fn relation_residuals(cv: &ComponentVector) -> RelationReport {
    let prec = cv.prec();
    let cx = Ctx { prec };
    let one_minus_z = Float::with_val(prec, 1 - &cv.z);
    let inv_1mz = Float::with_val(prec, one_minus_z.recip_ref());
    let sqrt_1mz = Float::with_val(prec, one_minus_z.sqrt_ref());
    let zero = Float::new(prec);
    let mut report = RelationReport::default();
    match cv.family.kind() {
        FamilyKind::F32 => {
            let (a, b) = (cv.a(), cv.b());
            report.push("a1sq", cx.paren(a, a, 2), zero.clone());
            report.push("ab-mixed", cx.paren(a, b, 2), zero.clone());
            report.push("b-quadratic", cx.paren(b, b, 2), inv_1mz.clone());
            let over = |x: &Float| Float::with_val(prec, x / &sqrt_1mz);
            report.push_signed("M0", cx.minor(a, b, 1, 2), over(&a[2]));
            report.push_signed("M1", cx.minor(a, b, 0, 2), over(&a[1]));
            report.push_signed("M2", cx.minor(a, b, 0, 1), over(&a[0]));
        }
        FamilyKind::F54 => {
            let (a, b, c) = (cv.a(), cv.b(), cv.c().expect("5F4 carries C"));
            report.push("a-quadratic", cx.paren(a, a, 4), zero.clone());
            report.push("b-quadratic", cx.paren(b, b, 4), zero.clone());
            report.push("c-quadratic", cx.paren(c, c, 4), inv_1mz.clone());
            report.push("ab-mixed", cx.paren(a, b, 4), zero.clone());
            report.push("ac-mixed", cx.paren(a, c, 4), zero.clone());
            report.push("bc-mixed", cx.paren(b, c, 4), zero.clone());

            let u: Vec<Float> = (0..5).map(|j| cx.minor(a, b, 0, j)).collect();
            let v: Vec<Float> = (0..5).map(|j| cx.minor(a, c, 0, j)).collect();
            let w: Vec<Float> = (0..5).map(|j| cx.minor(b, c, 0, j)).collect();
            // x₂y₂ − x₁y₃ − y₁x₃
            let quad = |x: &[Float], y: &[Float]| cx.mul(&x[2], &y[2]) - cx.mul(&x[1], &y[3]) - cx.mul(&y[1], &x[3]);
            let a0sq = cx.mul(&cx.mul(&a[0], &a[0]), &inv_1mz);
            let b0sq = cx.mul(&cx.mul(&b[0], &b[0]), &inv_1mz);
            let a0b0 = cx.mul(&cx.mul(&a[0], &b[0]), &inv_1mz);
            report.push("u-quadratic", quad(&u, &u), zero.clone());
            report.push("v-quadratic", quad(&v, &v), a0sq);
            report.push("w-quadratic", quad(&w, &w), b0sq);
            report.push("uv-mixed", quad(&u, &v), zero.clone());
            report.push("uw-mixed", quad(&u, &w), zero.clone());
            report.push("vw-mixed", quad(&v, &w), a0b0);

            let row = |i: usize| [a[i].clone(), b[i].clone(), c[i].clone()];
            let rows: Vec<[Float; 3]> = (0..4).map(row).collect();
            let over = |x: &Float| Float::with_val(prec, x / &sqrt_1mz);
            report.push_signed("M3", cx.det3([&rows[0], &rows[1], &rows[2]]), over(&u[1]));
            report.push_signed("M2", cx.det3([&rows[0], &rows[1], &rows[3]]), over(&u[2]));
            report.push_signed("M1", cx.det3([&rows[0], &rows[2], &rows[3]]), over(&u[3]));
            report.push_signed("M0", cx.det3([&rows[1], &rows[2], &rows[3]]), over(&u[4]));

            let lhs = Float::with_val(prec, (cx.mul(&u[1], &v[4]) - cx.mul(&u[4], &v[1])) / (cx.mul(&u[1], &v[2]) - cx.mul(&u[2], &v[1])));
            let rhs = Float::with_val(prec, cx.minor(a, b, 1, 2) / &u[1]);
            report.push("J", lhs, rhs);
        }
        FamilyKind::F76 => {}
    }
    report
}

#[cfg(test)]
mod tests {
    use rug::Rational;

    use super::*;
    use crate::hyperseries::{evaluate_components, SeriesFamily};
    use crate::numerics::PrecisionContext;

    #[test]
    fn f32_relations_at_third() {
        let ctx = PrecisionContext::default();
        let family = SeriesFamily::f32(Rational::from((1, 2))).unwrap();
        let cv = evaluate_components(&family, &(ctx.real(1) / 3u32), 1, &ctx).unwrap();
        let report = relation_residuals(&cv);
        assert_eq!(report.entries.len(), 6);
        assert!(report.get("a1sq").unwrap().residual < 1e-70);
        let worst = report.max_residual().unwrap();
        assert!(worst.residual < 1e-60, "{} = {}", worst.name, worst.residual);
    }

    #[test]
    fn f54_relations() {
        let ctx = PrecisionContext::default();
        for (fam, z, u) in [("5F4:1/2,1/2", -0.25, -1), ("5F4:1/4,1/6", 0.02, 1)] {
            let family = SeriesFamily::parse(fam).unwrap();
            let cv = evaluate_components(&family, &ctx.real(z), u, &ctx).unwrap();
            let report = relation_residuals(&cv);
            assert_eq!(report.entries.len(), 17);
            let worst = report.max_residual().unwrap();
            assert!(worst.residual < 1e-60, "{fam}: {} = {}", worst.name, worst.residual);
        }
    }
}
