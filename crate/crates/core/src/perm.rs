//! Permutations of `{1..n}` and disjoint-cycle notation.
//!
//! Products are read left to right: `a.compose(&b)` applies `a` first and
//! then `b`, so point `i` goes to `b(a(i))`. The commutator is
//! `[a, b] = a⁻¹ b⁻¹ a b` under the same convention.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A bijection of `{1..n}`.
///
/// Points are 1-based in every textual form; internally the image table is
/// 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree > 0, "permutation degree must be positive");
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images (`images[i - 1]` is the
    /// image of point `i`).
    pub fn from_images(images: &[usize]) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::Input("permutation degree must be positive".into()));
        }
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n {
                return Err(Error::Input(format!("image {img} out of range 1..={n}")));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::Input(format!("image {img} repeated")));
            }
            out.push((img - 1) as u32);
        }
        Ok(Permutation {
            images: out.into_boxed_slice(),
        })
    }

    /// Unchecked constructor from a 0-based image table.
    pub(crate) fn from_zero_based(images: Vec<u32>) -> Self {
        debug_assert!(is_bijection(&images));
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `point`.
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        self.check_degree(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Self {
        let images = self
            .images
            .iter()
            .map(|&i| other.images[i as usize])
            .collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u32; self.degree()].into_boxed_slice();
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `self` raised to `exponent`; negative exponents go through the inverse.
    pub fn power(&self, exponent: i64) -> Self {
        let order = self.order() as i64;
        let e = exponent.rem_euclid(order);
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        result
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Permutation) -> Result<Self> {
        self.check_degree(other)?;
        Ok(self
            .inverse()
            .compose_unchecked(&other.inverse())
            .compose_unchecked(self)
            .compose_unchecked(other))
    }

    /// Lengths of the nontrivial cycles, in order of smallest moved point.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(Vec::len).collect()
    }

    /// Least `m >= 1` with `self^m` the identity.
    pub fn order(&self) -> usize {
        self.cycle_lengths()
            .into_iter()
            .fold(1, |acc, len| acc.lcm(&len))
    }

    /// Nontrivial cycles as 1-based point lists, each starting at its
    /// smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Parses disjoint-cycle notation such as `"(1 2 3)(4 5)"` or `"()"`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Input("permutation degree must be positive".into()));
        }
        let err = |position: usize, message: String| Error::Cycles { position, message };
        let bytes = text.as_bytes();
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut pos = 0;
        let mut any_cycle = false;

        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };

        loop {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'(' {
                return Err(err(
                    pos,
                    format!("expected '(', found {:?}", bytes[pos] as char),
                ));
            }
            any_cycle = true;
            pos += 1;
            let mut cycle: Vec<usize> = Vec::new();
            loop {
                skip_ws(&mut pos);
                if pos == bytes.len() {
                    return Err(err(pos, "unterminated cycle".into()));
                }
                if bytes[pos] == b')' {
                    pos += 1;
                    break;
                }
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(err(
                        pos,
                        format!("expected a point, found {:?}", bytes[pos] as char),
                    ));
                }
                if pos < bytes.len() && !(bytes[pos].is_ascii_whitespace() || bytes[pos] == b')') {
                    return Err(err(pos, format!("unexpected {:?}", bytes[pos] as char)));
                }
                let point: usize = text[start..pos]
                    .parse()
                    .map_err(|_| err(start, "point is too large".into()))?;
                if point == 0 || point > degree {
                    return Err(err(
                        start,
                        format!("point {point} out of range 1..={degree}"),
                    ));
                }
                if std::mem::replace(&mut used[point - 1], true) {
                    return Err(err(start, format!("point {point} repeated")));
                }
                cycle.push(point - 1);
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        if !any_cycle {
            return Err(err(0, "empty text; use \"()\" for the identity".into()));
        }
        Ok(Permutation::from_zero_based(images))
    }

    /// Canonical cycle notation; the identity prints as `"()"`.
    pub fn format_cycles(&self) -> String {
        self.to_string()
    }
}

fn is_bijection(images: &[u32]) -> bool {
    let mut seen = vec![false; images.len()];
    images
        .iter()
        .all(|&i| (i as usize) < images.len() && !std::mem::replace(&mut seen[i as usize], true))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}
