//! JSON form of a periodic set. Integers travel as decimal strings.

use serde::{Deserialize, Serialize};

use super::{AmbientGroup, BitRow, PeriodicSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientJson {
    pub torsion_factors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnJson {
    pub torsion: Vec<String>,
    /// One character per row of the window, `'1'` for members.
    pub bits: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowJson {
    pub lo: String,
    pub hi: String,
    pub columns: Vec<ColumnJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub torsion: Vec<String>,
    pub residue: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicSetJson {
    pub ambient: AmbientJson,
    pub period: String,
    pub window: WindowJson,
    pub right_pattern: Vec<ClassJson>,
    pub left_pattern: Vec<ClassJson>,
}

fn strs(v: &[i64]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn num(s: &str, what: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse {
        position: 0,
        message: format!("{what}: '{s}' is not a decimal integer"),
    })
}

pub fn ambient_to_json(g: &AmbientGroup) -> AmbientJson {
    AmbientJson {
        torsion_factors: strs(g.factors()),
    }
}

pub fn ambient_from_json(a: &AmbientJson) -> Result<AmbientGroup> {
    let f = a
        .torsion_factors
        .iter()
        .map(|s| num(s, "torsion factor"))
        .collect::<Result<Vec<_>>>()?;
    AmbientGroup::new(f)
}

impl PeriodicSet {
    pub fn to_json(&self) -> PeriodicSetJson {
        let g = self.ambient();
        let (lo, hi) = self.window();
        let p = self.period();
        let classes = |pairs: Vec<(usize, usize)>| {
            pairs
                .into_iter()
                .map(|(c, r)| ClassJson {
                    torsion: strs(&g.coords(c)),
                    residue: r.to_string(),
                })
                .collect()
        };
        PeriodicSetJson {
            ambient: ambient_to_json(g),
            period: p.to_string(),
            window: WindowJson {
                lo: lo.to_string(),
                hi: hi.to_string(),
                columns: (0..g.order())
                    .map(|c| ColumnJson {
                        torsion: strs(&g.coords(c)),
                        bits: (lo..hi)
                            .map(|n| if self.contains(c, n) { '1' } else { '0' })
                            .collect(),
                    })
                    .collect(),
            },
            right_pattern: classes(self.right_classes()),
            left_pattern: classes(self.left_classes()),
        }
    }

    /// Accepts any consistent description, canonical or not.
    pub fn from_json(j: &PeriodicSetJson) -> Result<Self> {
        let g = ambient_from_json(&j.ambient)?;
        let ord = g.order();
        let p = num(&j.period, "period")?;
        if p < 1 || p as usize > super::MAX_PERIOD {
            return Err(Error::Parse {
                position: 0,
                message: format!("period {p} out of range"),
            });
        }
        let p = p as usize;
        let lo = num(&j.window.lo, "window.lo")?;
        let hi = num(&j.window.hi, "window.hi")?;
        if lo > hi {
            return Err(Error::Parse {
                position: 0,
                message: "window.lo exceeds window.hi".into(),
            });
        }
        let width = (hi - lo) as usize;
        let torsion_index = |t: &[String]| -> Result<usize> {
            let v = t
                .iter()
                .map(|s| num(s, "torsion"))
                .collect::<Result<Vec<_>>>()?;
            g.index(&v)
        };
        let mut cols = vec![BitRow::new(width); ord];
        for col in &j.window.columns {
            let c = torsion_index(&col.torsion)?;
            if col.bits.chars().count() != width {
                return Err(Error::Parse {
                    position: 0,
                    message: "window column length does not match the window".into(),
                });
            }
            for (i, ch) in col.bits.chars().enumerate() {
                match ch {
                    '1' => cols[c].set(i),
                    '0' => {}
                    _ => {
                        return Err(Error::Parse {
                            position: i,
                            message: format!("bad bit '{ch}'"),
                        })
                    }
                }
            }
        }
        let pattern = |cls: &[ClassJson]| -> Result<BitRow> {
            let mut b = BitRow::new(ord * p);
            for cl in cls {
                let c = torsion_index(&cl.torsion)?;
                let r = num(&cl.residue, "residue")?.rem_euclid(p as i64) as usize;
                b.set(c * p + r);
            }
            Ok(b)
        };
        let right = pattern(&j.right_pattern)?;
        let left = pattern(&j.left_pattern)?;
        Ok(PeriodicSet::build(&g, p, lo, hi, right, left, |c, n| {
            cols[c].get((n - lo) as usize)
        }))
    }
}

#[cfg(test)]
mod tests {
    use crate::perset::literal::parse;
    use crate::perset::PeriodicSet;

    #[test]
    fn json_round_trip() {
        for lit in ["{1}, 0+2N", "C=2; (1){0}, (*)3+4N, (0)-1-2N", "{}"] {
            let s = parse(lit).unwrap();
            let text = serde_json::to_string(&s.to_json()).unwrap();
            let back: super::PeriodicSetJson = serde_json::from_str(&text).unwrap();
            assert_eq!(PeriodicSet::from_json(&back).unwrap(), s);
        }
    }
}
