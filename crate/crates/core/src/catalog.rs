//! Embedded data for the exceptional complex reflection groups G24, G27,
//! G29, G31, G33 and G34.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::group::{FreeWord, Presentation};
use crate::numeric::{rat, GaussianRational, Rational};
use crate::poly::{poly, MultiPoly, PolyMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupId {
    G24,
    G27,
    G29,
    G31,
    G33,
    G34,
}

impl GroupId {
    pub const ALL: [GroupId; 6] = [
        GroupId::G24,
        GroupId::G27,
        GroupId::G29,
        GroupId::G31,
        GroupId::G33,
        GroupId::G34,
    ];
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for GroupId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupId::ALL
            .into_iter()
            .find(|g| g.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| CatalogError::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown group `{0}` (expected one of G24 G27 G29 G31 G33 G34)")]
    UnknownId(String),
    #[error("{0} has no basic-derivation matrix")]
    NoMatrix(GroupId),
    #[error("{0} has no restriction plane")]
    NoPlane(GroupId),
}

/// Affine 2-plane given by substitutions of some invariants, leaving a
/// curve in `fiber` and `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    pub bindings: Vec<(&'static str, &'static str)>,
    pub fiber: &'static str,
    pub base: &'static str,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: GroupId,
    /// Invariant names, in matrix order.
    pub vars: Vec<&'static str>,
    /// Degrees `d_i` of the basic invariants.
    pub weights: Vec<u64>,
    /// Codegrees `d*_j`: entry `(i, j)` has weight `d_i + d*_j`.
    pub codegrees: Vec<u64>,
    /// Scalar in front of the printed integer matrix.
    pub prefactor: Rational,
    /// Matrix with the prefactor applied.
    pub matrix: Option<PolyMatrix>,
    pub first_invariant: Option<MultiPoly>,
    pub plane: Option<Plane>,
    /// Target braid-group presentations; several for G27.
    pub presentations: Vec<Presentation>,
    /// Word whose power is central, and the power.
    pub central_base: FreeWord,
    pub central_exponent: i32,
    /// Order of the reflection group.
    pub order: u64,
}

impl CatalogEntry {
    pub fn presentation(&self) -> &Presentation {
        &self.presentations[0]
    }

    pub fn central_word(&self) -> FreeWord {
        self.central_base.pow(self.central_exponent)
    }

    /// Weighted degree of the discriminant: `sum d_i + sum d*_j`.
    pub fn discriminant_degree(&self) -> u64 {
        self.weights.iter().sum::<u64>() + self.codegrees.iter().sum::<u64>()
    }

    /// Matrix and presentations in the polynomial and presentation text
    /// formats.
    pub fn dump_text(&self) -> String {
        let mut s = format!("group: {}\norder: {}\n", self.id, self.order);
        let vw: Vec<String> = self
            .vars
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| format!("{}:{}", v, w))
            .collect();
        s += &format!("weights: {}\n", vw.join(" "));
        match &self.matrix {
            Some(m) => {
                s += &format!("matrix: {}\n", m.size());
                for i in 0..m.size() {
                    for j in 0..m.size() {
                        s += &format!("{}\n", m.entry(i, j));
                    }
                }
            }
            None => s += "matrix: none\n",
        }
        if let Some(f) = &self.first_invariant {
            s += &format!("f1: {}\n", f);
        }
        if let Some(p) = &self.plane {
            let b: Vec<String> = p
                .bindings
                .iter()
                .map(|(v, t)| format!("{}={}", v, t))
                .collect();
            s += &format!("plane: {} fiber={} base={}\n", b.join(" "), p.fiber, p.base);
        }
        let gens = self.presentation().gens();
        s += &format!(
            "central: ({})^{}\n",
            self.central_base.display(gens),
            self.central_exponent
        );
        for p in &self.presentations {
            s += &p.to_string();
        }
        s
    }
}

fn matrix(vars: &[&str], rows: &[&[&str]], prefactor: &Rational) -> PolyMatrix {
    let c = GaussianRational::from_rational(prefactor.clone());
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|e| poly(e, vars).scale(&c)).collect())
        .collect();
    PolyMatrix::from_rows(rows).expect("catalog matrices are square")
}

const G24_ROWS: [&[&str]; 3] = [
    &["4*x", "6*y^2", "14*z - 36*x^2*y"],
    &["6*y", "-z", "128*x*y^2 - 7*x^4"],
    &[
        "14*z",
        "128*x*y^3 - 6*x^2*z - 7*x^4*y",
        "287*x*y*z - 35*x^3*y^2 - 294*y^4 + 7*x^6",
    ],
];

const G27_ROWS: [&[&str]; 3] = [
    &["6*x", "12*y^2", "30*z + 234*x^3*y"],
    &["12*y", "-4*z", "-34*x*z - 1362*x^2*y^2 + 156*y^3 + 900*x^4*y - 270*x^6"],
    &[
        "30*z",
        "-34*x*y*z - 1362*x^2*y^3 + 78*x^3*z + 156*y^4 + 900*x^4*y^2 - 270*x^6*y",
        "4836*x*y^4 + 330*y^2*z - 3349*x^2*y*z - 17727*x^3*y^3 + 2013*x^4*z + 7110*x^5*y^2 + 135*x^7*y - 810*x^9",
    ],
];

const G29_ROWS: [&[&str]; 4] = [
    &["320*x", "640*y^2", "960*z + 2*x*y", "1600*t + 8*y*z"],
    &[
        "640*y",
        "4096000*t + 225280*y*z + 1280*x*y^2",
        "64*x*z + 4*x^2*y",
        "-640*t*x + 16*x*y*z + 1536*z^2",
    ],
    &[
        "960*z",
        "-12800*t*x - 640*x*y*z",
        "200*t - 5*y*z + 3*x^2*z",
        "-10*t*y + 10*t*x^2 - 8*x*z^2",
    ],
    &[
        "1600*t",
        "-51200*t*z - 640*t*x*y - 1280*y*z^2",
        "-10*t*y + 8*t*x^2 - 4*x*z^2",
        "72*t*x*z - 96*z^3",
    ],
];

const G31_ROWS: [&[&str]; 4] = [
    &["2160*x", "3240*t*y", "5400*z + 2*x*y", "6480*t - 2*y^2"],
    &[
        "3240*y",
        "4860*t*x^2 - 26244000*z^2",
        "-9720*t + 3*x^3",
        "-11340*x*z - 3*x^2*y",
    ],
    &[
        "5400*z",
        "16200*x*z^2 - 9720*t^2",
        "-t*x - 5*y*z",
        "t*y + 5*x^2*z",
    ],
    &[
        "6480*t",
        "-11340*t*x*z - 16200*y*z^2",
        "-5*t*y - 2*x^2*z",
        "2*x*y*z + 5*t*x^2 + 5400*z^2",
    ],
];

const G33_ROWS: [&[&str]; 5] = [
    &[
        "512*x",
        "768*y*z",
        "1280*z + (-4/3)*x*y",
        "1536*t - 4*y^2",
        "2304*u - 4*t*y",
    ],
    &[
        "768*y",
        "-663552*u + 1152*x^2*z",
        "768*t - 2*x^3",
        "8064*x*z - 6*x^2*y",
        "-6*t*x^2 + 23040*z^2",
    ],
    &[
        "1280*z",
        "768*t*z - 1152*u*x",
        "(-1/3)*t*x + 3*y*z",
        "576*u - t*y + 9*x^2*z",
        "6*u*y + 36*x*z^2 - 4*t^2",
    ],
    &[
        "1536*t",
        "-3456*u*y + 8064*x*z^2",
        "576*u + 3*t*y - 5*x^2*z",
        "-15*x*y*z + 9*t*x^2 + 11520*z^2",
        "-42*t*x*z + 18*u*x^2 + 108*y*z^2",
    ],
    &[
        "2304*u",
        "-3456*t*u + 23040*z^3",
        "6*u*y - 4*x*z^2",
        "18*u*x^2 - 12*y*z^2",
        "90*u*x*z - 48*t*z^2",
    ],
];

const G33_RELATIONS: [&str; 11] = [
    "sts=tst",
    "tut=utu",
    "uvu=vuv",
    "wtw=twt",
    "wuw=uwu",
    "su=us",
    "sv=vs",
    "tv=vt",
    "ws=sw",
    "wv=vw",
    "tuwtuw=uwtuwt=wtuwtu",
];

fn pres(gens: &str, relations: &[&str]) -> Presentation {
    Presentation::from_relations(gens, relations).expect("catalog presentations parse")
}

pub fn get_entry(id: GroupId) -> CatalogEntry {
    let word = |p: &Presentation, s: &str| p.parse_word(s).expect("catalog words parse");
    match id {
        GroupId::G24 => {
            let vars = vec!["x", "y", "z"];
            let p = pres(
                "stu",
                &[
                    "stst=tsts",
                    "susu=usus",
                    "tutu=utut",
                    "stustus=tustust=ustustu",
                ],
            );
            CatalogEntry {
                id,
                weights: vec![4, 6, 14],
                codegrees: vec![0, 8, 10],
                prefactor: rat(1, 1),
                matrix: Some(matrix(&vars, &G24_ROWS, &rat(1, 1))),
                first_invariant: Some(poly("x^3*y + z*y^3 + x*z^3", &vars)),
                plane: Some(Plane {
                    bindings: vec![("y", "1")],
                    fiber: "z",
                    base: "x",
                }),
                central_base: word(&p, "stu"),
                central_exponent: 7,
                presentations: vec![p],
                order: 336,
                vars,
            }
        }
        GroupId::G27 => {
            let vars = vec!["x", "y", "z"];
            let ps = vec![
                pres(
                    "stu",
                    &[
                        "stst=tsts",
                        "tut=utu",
                        "sus=usu",
                        "stustustusts=tstustustust",
                    ],
                ),
                pres(
                    "stu",
                    &["ststs=tstst", "tut=utu", "sus=usu", "ststustust=tstustustu"],
                ),
                pres(
                    "stu",
                    &["ststs=tstst", "tutu=utut", "sus=usu", "stustut=ustustu"],
                ),
            ];
            CatalogEntry {
                id,
                weights: vec![6, 12, 30],
                codegrees: vec![0, 18, 24],
                prefactor: rat(1, 1),
                matrix: Some(matrix(&vars, &G27_ROWS, &rat(1, 1))),
                first_invariant: Some(poly(
                    "-135*x*y*z^4 - 45*x^2*y^2*z^2 + 10*x^3*y^3 + 9*x^5*z + 9*y^5*z + 27*z^6",
                    &vars,
                )),
                plane: Some(Plane {
                    bindings: vec![("y", "1")],
                    fiber: "z",
                    base: "x",
                }),
                central_base: word(&ps[0], "stu"),
                central_exponent: 5,
                presentations: ps,
                order: 2160,
                vars,
            }
        }
        GroupId::G29 => {
            let vars = vec!["x", "y", "z", "t"];
            let p = pres(
                "stuv",
                &[
                    "sts=tst",
                    "tut=utu",
                    "uvu=vuv",
                    "tvtv=vtvt",
                    "su=us",
                    "sv=vs",
                    "utvutv=tvutvu",
                ],
            );
            CatalogEntry {
                id,
                weights: vec![4, 8, 12, 20],
                codegrees: vec![0, 12, 8, 16],
                prefactor: rat(1, 80),
                matrix: Some(matrix(&vars, &G29_ROWS, &rat(1, 80))),
                first_invariant: None,
                plane: None,
                central_base: word(&p, "stuv"),
                central_exponent: 5,
                presentations: vec![p],
                order: 7680,
                vars,
            }
        }
        GroupId::G31 => {
            let vars = vec!["x", "y", "z", "t"];
            let p = pres(
                "stuvw",
                &[
                    "sts=tst",
                    "tut=utu",
                    "uvu=vuv",
                    "vwv=wvw",
                    "sv=vs",
                    "tv=vt",
                    "tw=wt",
                    "suw=uws=wsu",
                ],
            );
            CatalogEntry {
                id,
                weights: vec![8, 12, 20, 24],
                codegrees: vec![0, 28, 12, 16],
                prefactor: rat(1, 270),
                matrix: Some(matrix(&vars, &G31_ROWS, &rat(1, 270))),
                first_invariant: None,
                plane: Some(Plane {
                    bindings: vec![("z", "y"), ("t", "1 + x")],
                    fiber: "x",
                    base: "y",
                }),
                central_base: word(&p, "stuwv"),
                central_exponent: 6,
                presentations: vec![p],
                order: 46080,
                vars,
            }
        }
        GroupId::G33 => {
            let vars = vec!["x", "y", "z", "t", "u"];
            let p = pres("stuvw", &G33_RELATIONS);
            CatalogEntry {
                id,
                weights: vec![4, 6, 10, 12, 18],
                codegrees: vec![0, 12, 6, 8, 14],
                prefactor: rat(1, 128),
                matrix: Some(matrix(&vars, &G33_ROWS, &rat(1, 128))),
                first_invariant: None,
                plane: None,
                central_base: word(&p, "stuvw"),
                central_exponent: 9,
                presentations: vec![p],
                order: 51840,
                vars,
            }
        }
        GroupId::G34 => {
            let mut rels: Vec<&str> = G33_RELATIONS.to_vec();
            rels.extend(["xvx=vxv", "xs=sx", "xt=tx", "xu=ux", "xw=wx"]);
            let p = pres("stuvwx", &rels);
            CatalogEntry {
                id,
                vars: vec!["x", "y", "z", "t", "u", "v"],
                weights: vec![6, 12, 18, 24, 30, 42],
                codegrees: Vec::new(),
                prefactor: rat(1, 1),
                matrix: None,
                first_invariant: None,
                plane: None,
                central_base: word(&p, "stuvwx"),
                central_exponent: 7,
                presentations: vec![p],
                order: 39_191_040,
            }
        }
    }
}

/// Determinant of the basic-derivation matrix.
pub fn discriminant_of(id: GroupId) -> Result<MultiPoly, CatalogError> {
    let e = get_entry(id);
    let m = e.matrix.ok_or(CatalogError::NoMatrix(id))?;
    Ok(m.det_bareiss())
}

/// Restriction of the discriminant to the catalog plane, a polynomial in
/// the plane's fiber and base variables.
pub fn plane_curve(id: GroupId) -> Result<MultiPoly, CatalogError> {
    let e = get_entry(id);
    let plane = e.plane.clone().ok_or(CatalogError::NoPlane(id))?;
    let d = discriminant_of(id)?;
    restrict(&d, &plane)
        .map_err(|_| CatalogError::NoPlane(id))
        .map(|p| {
            p.with_vars(&[plane.fiber, plane.base])
                .expect("plane leaves two variables")
        })
}

/// Substitutes the plane bindings into `p`.
pub fn restrict(p: &MultiPoly, plane: &Plane) -> Result<MultiPoly, crate::poly::PolyError> {
    let bindings: Vec<(&str, MultiPoly)> = plane
        .bindings
        .iter()
        .map(|(v, t)| MultiPoly::parse_with_vars(t, &[plane.fiber, plane.base]).map(|q| (*v, q)))
        .collect::<Result<_, _>>()?;
    p.substitute(&bindings)
}
