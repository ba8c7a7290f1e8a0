//! The line-oriented `.alg` presentation format.
//!
//! ```text
//! field Q                # or: field Fp 7
//! vertices s e           # order = quasi-hereditary order
//! arrow u e s            # name, source, target, optional degree (default 1)
//! relation 1*u.v + -1/2*x.y
//! ```

use serde_json::json;

use crate::algebra::{AlgebraPresentation, Arrow, Term};
use crate::error::{Error, Result};
use crate::exactla::{is_prime, Field};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_presentation(text: &str) -> Result<AlgebraPresentation> {
    let mut field = None;
    let mut p: Option<AlgebraPresentation> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let mut words = body.split_whitespace();
        let kw = words.next().unwrap();
        let rest: Vec<&str> = words.collect();
        match kw {
            "field" => {
                if field.is_some() || p.is_some() {
                    return Err(perr(line, "field must be declared once, before vertices"));
                }
                field = Some(match rest.as_slice() {
                    ["Q"] => Field::Q,
                    ["Fp", q] => {
                        let q: u64 = q.parse().map_err(|_| perr(line, format!("bad prime {q}")))?;
                        if !is_prime(q) {
                            return Err(perr(line, format!("{q} is not prime")));
                        }
                        Field::Fp(q)
                    }
                    _ => return Err(perr(line, "expected `field Q` or `field Fp <prime>`")),
                });
            }
            "vertices" => {
                if p.is_some() {
                    return Err(perr(line, "vertices declared twice"));
                }
                if rest.is_empty() {
                    return Err(perr(line, "no vertices listed"));
                }
                let f = *field.get_or_insert(Field::Q);
                let pres = AlgebraPresentation::new(f, &rest);
                for (i, v) in pres.vertices.iter().enumerate() {
                    if pres.vertices[..i].contains(v) {
                        return Err(perr(line, format!("duplicate vertex {v}")));
                    }
                }
                p = Some(pres);
            }
            "arrow" => {
                let pres = p.as_mut().ok_or_else(|| perr(line, "arrow before vertices"))?;
                let (name, s, t, deg) = match rest.as_slice() {
                    [n, s, t] => (*n, *s, *t, 1i64),
                    [n, s, t, d] => {
                        (*n, *s, *t, d.parse().map_err(|_| perr(line, format!("bad degree {d}")))?)
                    }
                    _ => return Err(perr(line, "expected `arrow <name> <src> <dst> [degree]`")),
                };
                if pres.arrow_index(name).is_some() {
                    return Err(perr(line, format!("duplicate arrow {name}")));
                }
                let src = pres.vertex_index(s).ok_or_else(|| perr(line, format!("unknown vertex {s}")))?;
                let tgt = pres.vertex_index(t).ok_or_else(|| perr(line, format!("unknown vertex {t}")))?;
                if deg <= 0 {
                    return Err(perr(line, format!("arrow {name} must have positive degree")));
                }
                pres.arrows.push(Arrow { name: name.into(), src, tgt, degree: deg });
            }
            "relation" => {
                let pres = p.as_mut().ok_or_else(|| perr(line, "relation before vertices"))?;
                let rel = parse_relation(pres, &rest, line)?;
                pres.relations.push(rel);
                let probe = AlgebraPresentation { relations: vec![pres.relations.last().unwrap().clone()], ..pres.clone() };
                if let Err(e) = probe.validate() {
                    return Err(perr(line, e.to_string()));
                }
            }
            other => return Err(perr(line, format!("unknown keyword {other}"))),
        }
    }
    p.ok_or_else(|| perr(0, "missing `vertices` line"))
}

fn parse_relation(pres: &AlgebraPresentation, words: &[&str], line: usize) -> Result<Vec<Term>> {
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut expect_term = true;
    for &w in words {
        if !expect_term {
            sign = match w {
                "+" => 1,
                "-" => -1,
                _ => return Err(perr(line, format!("expected + or -, found {w}"))),
            };
            expect_term = true;
            continue;
        }
        let (coeff, path) = match w.split_once('*') {
            Some((c, p)) => (c, p),
            None => match w.strip_prefix('-') {
                Some(p) => ("-1", p),
                None => ("1", w),
            },
        };
        let mut c = pres.field.parse(coeff).ok_or_else(|| perr(line, format!("bad coefficient {coeff}")))?;
        if sign < 0 {
            c = -c;
        }
        let arrows = path
            .split('.')
            .map(|n| pres.arrow_index(n).ok_or_else(|| perr(line, format!("unknown arrow {n}"))))
            .collect::<Result<Vec<_>>>()?;
        terms.push(Term { coeff: c, path: arrows });
        expect_term = false;
        sign = 1;
    }
    if terms.is_empty() || expect_term {
        return Err(perr(line, "incomplete relation"));
    }
    Ok(terms)
}

/// Inverse of [`parse_presentation`].
pub fn write_presentation(p: &AlgebraPresentation) -> String {
    let mut s = String::new();
    match p.field {
        Field::Q => s.push_str("field Q\n"),
        Field::Fp(q) => s.push_str(&format!("field Fp {q}\n")),
    }
    s.push_str(&format!("vertices {}\n", p.vertices.join(" ")));
    for a in &p.arrows {
        s.push_str(&format!("arrow {} {} {} {}\n", a.name, p.vertices[a.src], p.vertices[a.tgt], a.degree));
    }
    for r in &p.relations {
        let terms: Vec<String> =
            r.iter().map(|t| format!("{}*{}", t.coeff, p.path_name(&t.path))).collect();
        s.push_str(&format!("relation {}\n", terms.join(" + ")));
    }
    s
}

/// JSON mirror of a presentation.
pub fn presentation_json(p: &AlgebraPresentation) -> serde_json::Value {
    json!({
        "field": p.field.name(),
        "vertices": p.vertices,
        "arrows": p.arrows.iter().map(|a| json!({
            "name": a.name,
            "source": p.vertices[a.src],
            "target": p.vertices[a.tgt],
            "degree": a.degree,
        })).collect::<Vec<_>>(),
        "relations": p.relations.iter().map(|r| r.iter().map(|t| json!({
            "coeff": t.coeff.to_string(),
            "path": t.path.iter().map(|&a| p.arrows[a].name.clone()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a3_line() {
        let p = parse_presentation("vertices 1 2 3\narrow a 2 1\narrow b 3 2\n").unwrap();
        assert_eq!(p.vertices, vec!["1", "2", "3"]);
        assert_eq!(p.arrows.len(), 2);
        assert_eq!((p.arrows[0].src, p.arrows[0].tgt, p.arrows[0].degree), (1, 0, 1));
    }

    #[test]
    fn parses_relation_terms() {
        let p = parse_presentation(
            "field Q\nvertices s e\narrow u e s\narrow v s e\nrelation 1*u.v # comment\n",
        )
        .unwrap();
        assert_eq!(p.relations, vec![vec![Term { coeff: Field::Q.one(), path: vec![0, 1] }]]);
        let p = parse_presentation(
            "vertices 1 2\narrow a 1 2\narrow b 1 2\narrow c 2 1\nrelation c.a - 3/2*c.b\n",
        )
        .unwrap();
        assert_eq!(p.relations[0][1].coeff, Field::Q.ratio(-3, 2));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_presentation("vertices 1\n\narrow x 1 9\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, msg: "unknown vertex 9".into() });
        let e = parse_presentation("vertices 1 2\narrow x 1 1\narrow y 1 2\nrelation x + y.y\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e:?}");
        let e = parse_presentation("vertices 1 2\narrow x 1 1\narrow y 1 2\nrelation 1*x.x + 1*x.y\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e:?}");
        assert!(parse_presentation("field Fp 8\nvertices 1\n").is_err());
    }

    #[test]
    fn inhomogeneous_by_length_rejected() {
        let e = parse_presentation("vertices 1\narrow x 1 1\nrelation 1*x + 1*x.x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn write_then_parse_round_trips() {
        for name in crate::corpus::NAMES {
            let p = crate::corpus::presentation(name);
            assert_eq!(parse_presentation(&write_presentation(&p)).unwrap(), p, "{name}");
        }
    }
}
