//! Prime fields `F_p`.

use crate::error::{Error, Result};
use crate::groupoid::ValidationReport;

pub type Element = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: Element,
}

fn is_prime(n: Element) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl PrimeField {
    /// Only prime orders are supported; prime powers would need extension
    /// field arithmetic.
    pub fn new(p: Element) -> Result<Self> {
        if !is_prime(p) || p > 251 {
            return Err(Error::InvalidArgument(format!(
                "q = {p} is not supported: only prime fields F_p with p ≤ 251 are implemented"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn order(&self) -> Element {
        self.p
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        (a + b) % self.p
    }

    pub fn sub(&self, a: Element, b: Element) -> Element {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: Element) -> Element {
        (self.p - a) % self.p
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        a * b % self.p
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: Element) -> Element {
        assert!(a % self.p != 0, "zero has no inverse");
        let mut result = 1;
        let (mut base, mut e) = (a % self.p, self.p - 2);
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.p
    }

    /// Exhaustive check of the field axioms.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for a in self.elements() {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                report.push("identities", vec![a as usize]);
            }
            if self.add(a, self.neg(a)) != 0 {
                report.push("additive inverse", vec![a as usize]);
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                report.push("multiplicative inverse", vec![a as usize]);
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    report.push("commutativity", vec![a as usize, b as usize]);
                }
                for c in self.elements() {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        report.push("distributivity", vec![a as usize, b as usize, c as usize]);
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                    {
                        report.push("associativity", vec![a as usize, b as usize, c as usize]);
                    }
                }
            }
        }
        report
    }
}
