//! Affine and projective spaces over GF(q) with standard representatives.
//!
//! Affine points are listed as an odometer over the coordinates, last
//! coordinate fastest, each running through the field elements in value
//! order. Projective points are listed chart by chart: chart `i` holds the
//! points `(0:…:0:1:w_{i+1}:…:w_m)`, enumerated as the affine space of its free
//! coordinates.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{Fe, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Affine,
    Projective,
}

/// An ordered, duplicate-free list of points stored as flat coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointList {
    pub kind: SpaceKind,
    /// Coordinates per point (m for affine, m + 1 for projective).
    pub width: usize,
    coords: Vec<Fe>,
    charts: Vec<u8>,
}

impl PointList {
    pub fn len(&self) -> usize {
        self.coords.len().checked_div(self.width).unwrap_or(self.charts.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, k: usize) -> &[Fe] {
        &self.coords[k * self.width..(k + 1) * self.width]
    }

    /// Chart index of the `k`-th point (0 for affine lists).
    pub fn chart(&self, k: usize) -> usize {
        self.charts[k] as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Fe]> + '_ {
        (0..self.len()).map(move |k| self.point(k))
    }

    pub fn format_point(&self, k: usize) -> String {
        let sep = match self.kind {
            SpaceKind::Affine => ",",
            SpaceKind::Projective => ":",
        };
        let body: Vec<String> = self.point(k).iter().map(|c| c.to_string()).collect();
        format!("({})", body.join(sep))
    }
}

/// Odometer coordinates of index `k` in an affine space of dimension `m`.
pub fn affine_coords(k: usize, m: usize, q: usize) -> Vec<Fe> {
    let mut v = vec![Fe::ZERO; m];
    let mut k = k;
    for j in (0..m).rev() {
        v[j] = Fe((k % q) as u8);
        k /= q;
    }
    v
}

/// Index of `coords` in the affine odometer order.
pub fn affine_index(coords: &[Fe], q: usize) -> usize {
    coords.iter().fold(0, |acc, c| acc * q + c.value())
}

pub fn enumerate_affine(m: usize, field: &Field) -> PointList {
    let q = field.q();
    let count = q.pow(m as u32);
    let mut coords = Vec::with_capacity(count * m);
    for k in 0..count {
        coords.extend(affine_coords(k, m, q));
    }
    PointList {
        kind: SpaceKind::Affine,
        width: m,
        coords,
        charts: vec![0; count],
    }
}

/// `(q^{m+1} - 1) / (q - 1)`.
pub fn projective_len(m: usize, q: usize) -> usize {
    (0..=m).map(|i| q.pow(i as u32)).sum()
}

/// First index of chart `i` in the canonical projective order.
pub fn chart_offset(m: usize, q: usize, i: usize) -> usize {
    (0..i).map(|j| q.pow((m - j) as u32)).sum()
}

pub fn chart_len(m: usize, q: usize, i: usize) -> usize {
    q.pow((m - i) as u32)
}

fn chart_into(m: usize, field: &Field, i: usize, coords: &mut Vec<Fe>, charts: &mut Vec<u8>) {
    let q = field.q();
    for k in 0..chart_len(m, q, i) {
        coords.extend(std::iter::repeat_n(Fe::ZERO, i));
        coords.push(Fe::ONE);
        coords.extend(affine_coords(k, m - i, q));
        charts.push(i as u8);
    }
}

pub fn enumerate_projective(m: usize, field: &Field) -> PointList {
    let mut coords = Vec::new();
    let mut charts = Vec::new();
    for i in 0..=m {
        chart_into(m, field, i, &mut coords, &mut charts);
    }
    PointList {
        kind: SpaceKind::Projective,
        width: m + 1,
        coords,
        charts,
    }
}

pub fn chart_points(m: usize, field: &Field, i: usize) -> Result<PointList> {
    if i > m {
        return Err(Error::ChartOutOfRange { chart: i, m });
    }
    let mut coords = Vec::new();
    let mut charts = Vec::new();
    chart_into(m, field, i, &mut coords, &mut charts);
    Ok(PointList {
        kind: SpaceKind::Projective,
        width: m + 1,
        coords,
        charts,
    })
}

/// A projective point in standard form: first nonzero coordinate is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    pub rep: Vec<Fe>,
    pub chart: usize,
}

impl ProjectivePoint {
    /// Position in the canonical projective order.
    pub fn index(&self, q: usize) -> usize {
        let m = self.rep.len() - 1;
        chart_offset(m, q, self.chart) + affine_index(&self.rep[self.chart + 1..], q)
    }

    pub fn parse(s: &str, field: &Field) -> Result<ProjectivePoint> {
        let bad = || Error::PointSyntax(s.to_string());
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let raw = body
            .split(':')
            .map(|c| {
                c.trim()
                    .parse::<usize>()
                    .map_err(|_| bad())
                    .and_then(|v| field.element(v))
            })
            .collect::<Result<Vec<_>>>()?;
        normalize(&raw, field)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.rep.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", body.join(":"))
    }
}

/// Scales a nonzero vector so its first nonzero coordinate is one.
pub fn normalize(raw: &[Fe], field: &Field) -> Result<ProjectivePoint> {
    let chart = raw
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::ZeroPoint)?;
    let s = field.inv_nz(raw[chart]);
    Ok(ProjectivePoint {
        rep: raw.iter().map(|&c| field.mul(c, s)).collect(),
        chart,
    })
}

/// Parses an affine point `(a,b,c)`.
pub fn parse_affine(s: &str, field: &Field) -> Result<Vec<Fe>> {
    let bad = || Error::PointSyntax(s.to_string());
    let body = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(bad)?;
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|c| {
            c.trim()
                .parse::<usize>()
                .map_err(|_| bad())
                .and_then(|v| field.element(v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lists() {
        let f2 = Field::new(2, 1).unwrap();
        let a = enumerate_affine(1, &f2);
        assert_eq!(
            (0..a.len()).map(|k| a.format_point(k)).collect::<Vec<_>>(),
            ["(0)", "(1)"]
        );
        let p = enumerate_projective(1, &f2);
        assert_eq!(
            (0..p.len()).map(|k| p.format_point(k)).collect::<Vec<_>>(),
            ["(1:0)", "(1:1)", "(0:1)"]
        );
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(enumerate_affine(2, &f4).len(), 16);
        assert_eq!(enumerate_projective(3, &f4).len(), 85);
        assert_eq!(chart_points(3, &f4, 3).unwrap().len(), 1);
        assert_eq!(chart_points(3, &f4, 2).unwrap().len(), 4);
        assert!(chart_points(3, &f4, 4).is_err());
    }

    #[test]
    fn normalize_examples() {
        let f = Field::new(2, 2).unwrap();
        let p = normalize(&[Fe(2), Fe(2), Fe(0), Fe(3)], &f).unwrap();
        assert_eq!(p.rep, vec![Fe(1), Fe(1), Fe(0), Fe(2)]);
        assert_eq!(p.chart, 0);
        let s = [Fe(0), Fe(1), Fe(3), Fe(2)];
        assert_eq!(normalize(&s, &f).unwrap().rep, s.to_vec());
        assert_eq!(normalize(&[Fe(0); 3], &f), Err(Error::ZeroPoint));
    }

    #[test]
    fn text_formats() {
        let f = Field::new(2, 2).unwrap();
        let p = ProjectivePoint::parse("(0:2:2:1)", &f).unwrap();
        assert_eq!(p.to_string(), "(0:1:1:3)");
        assert_eq!(parse_affine("(1, 3)", &f).unwrap(), vec![Fe(1), Fe(3)]);
        assert!(parse_affine("(1,4)", &f).is_err());
    }
}
