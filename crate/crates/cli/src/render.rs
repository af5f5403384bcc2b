//! Text and JSON output for each subcommand. Classes are printed 1-based
//! (`P1`, `Q1`, ...).

use std::fmt::{Display, Write};

use num_traits::ToPrimitive;
use patpoly::classify::classification_report;
use patpoly::closure::{algebra_chain, coherent_closure};
use patpoly::designs::{pbibd_parameters, DesignKind};
use patpoly::exactmat::RatPoly;
use patpoly::graphs::{write_graph6, Graph};
use patpoly::pattern::pattern_basis;
use patpoly::polyenum::{
    enumerate_polynomial_graphs, is_singular_polynomial_graph, spectrum_images,
};
use patpoly::Result;
use serde_json::{json, Value};

fn opt<T: Display>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn big(x: &num_bigint::BigInt) -> Value {
    x.to_i64()
        .map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn rational(x: &num_rational::BigRational) -> Value {
    if x.is_integer() {
        big(&x.to_integer())
    } else {
        Value::String(x.to_string())
    }
}

fn label_matrix(n: usize, prefix: char, label: impl Fn(usize, usize) -> usize) -> String {
    let width = (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .map(|(s, t)| (label(s, t) + 1).to_string().len())
        .max()
        .unwrap_or(1)
        + 1;
    let mut out = String::new();
    for s in 0..n {
        let row: Vec<String> = (0..n)
            .map(|t| format!("{prefix}{:<width$}", label(s, t) + 1, width = width - 1))
            .collect();
        writeln!(out, "  {}", row.join(" ").trim_end()).unwrap();
    }
    out
}

pub fn classify(g: &Graph, json: bool) -> Result<String> {
    let r = classification_report(g)?;
    if json {
        return Ok(pretty(&r));
    }
    let b = &r.bounds_ok;
    let fields: Vec<(&str, String)> = vec![
        ("graph6", write_graph6(g)),
        ("n", r.n.to_string()),
        ("edge_count", r.edge_count.to_string()),
        ("connected", r.connected.to_string()),
        ("regular", opt(r.regular)),
        ("diameter", opt(r.diameter)),
        ("ell", r.ell.to_string()),
        ("r", r.r.to_string()),
        ("cc_dim", r.cc_dim.to_string()),
        ("pattern_polynomial", r.pattern_polynomial.to_string()),
        ("distance_polynomial", opt(r.distance_polynomial)),
        ("distance_regular", opt(r.distance_regular)),
        ("walk_regular", r.walk_regular.to_string()),
        ("super_regular", opt(r.super_regular)),
        ("edge_regular", opt(r.edge_regular)),
        ("bounds_ok.ell_le_r", b.ell_le_r.to_string()),
        ("bounds_ok.r_le_cc_dim", b.r_le_cc_dim.to_string()),
        ("bounds_ok.diameter_bound", opt(b.diameter_bound)),
        ("bounds_ok.multiple_eigenvalue", opt(b.multiple_eigenvalue)),
        ("bounds_ok.odd_order", opt(b.odd_order)),
    ];
    Ok(fields.iter().map(|(k, v)| format!("{k}: {v}\n")).collect())
}

pub fn patterns(g: &Graph, json: bool) -> Result<String> {
    let basis = pattern_basis(g);
    let polys: Vec<Option<RatPoly>> = (0..basis.r())
        .map(|i| basis.class_polynomial(i))
        .collect::<Result<_>>()?;
    if json {
        let classes: Vec<Value> = (0..basis.r())
            .map(|i| {
                json!({
                    "class": i + 1,
                    "size": basis.class_size(i),
                    "diagonal": basis.is_diagonal_class(i),
                    "fingerprint": basis.fingerprint(i).iter().map(big).collect::<Vec<_>>(),
                    "polynomial": polys[i].as_ref().map(ToString::to_string),
                })
            })
            .collect();
        let labels: Vec<Vec<usize>> = (0..g.n())
            .map(|s| (0..g.n()).map(|t| basis.class_of(s, t) + 1).collect())
            .collect();
        return Ok(pretty(&json!({
            "n": g.n(),
            "ell": basis.ell(),
            "r": basis.r(),
            "pattern_polynomial": basis.is_pattern_polynomial(),
            "minimal_polynomial": basis.minimal_polynomial().to_string(),
            "classes": classes,
            "class_map": labels,
        })));
    }
    let mut out = String::new();
    writeln!(out, "n: {}", g.n()).unwrap();
    writeln!(out, "ell: {}", basis.ell()).unwrap();
    writeln!(out, "r: {}", basis.r()).unwrap();
    writeln!(out, "pattern_polynomial: {}", basis.is_pattern_polynomial()).unwrap();
    writeln!(out, "minimal_polynomial: {}", basis.minimal_polynomial()).unwrap();
    for (i, poly) in polys.iter().enumerate() {
        let fp: Vec<String> = basis
            .fingerprint(i)
            .iter()
            .map(ToString::to_string)
            .collect();
        writeln!(
            out,
            "P{}: size {}{}, powers ({}), polynomial {}",
            i + 1,
            basis.class_size(i),
            if basis.is_diagonal_class(i) {
                ", diagonal"
            } else {
                ""
            },
            fp.join(", "),
            opt(poly.as_ref()),
        )
        .unwrap();
    }
    out.push_str("classes:\n");
    out.push_str(&label_matrix(g.n(), 'P', |s, t| basis.class_of(s, t)));
    Ok(out)
}

pub fn closure(g: &Graph, json: bool) -> Result<String> {
    let cc = coherent_closure(g);
    let chain = algebra_chain(g);
    if json {
        let classes: Vec<Value> = (0..cc.m())
            .map(|k| {
                json!({
                    "class": k + 1,
                    "size": cc.class_size(k),
                    "diagonal": cc.is_diagonal_class(k),
                    "transpose": cc.transpose_of(k) + 1,
                })
            })
            .collect();
        let labels: Vec<Vec<usize>> = (0..g.n())
            .map(|s| (0..g.n()).map(|t| cc.color_of(s, t) + 1).collect())
            .collect();
        return Ok(pretty(&json!({
            "n": g.n(),
            "cc_dim": cc.m(),
            "rounds": cc.rounds(),
            "ell": chain.ell,
            "r": chain.r,
            "pattern_polynomial": chain.pattern_poly,
            "closures_equal": chain.closures_equal,
            "classes": classes,
            "class_map": labels,
        })));
    }
    let mut out = String::new();
    writeln!(out, "n: {}", g.n()).unwrap();
    writeln!(out, "cc_dim: {}", cc.m()).unwrap();
    writeln!(out, "rounds: {}", cc.rounds()).unwrap();
    writeln!(out, "ell: {}", chain.ell).unwrap();
    writeln!(out, "r: {}", chain.r).unwrap();
    writeln!(out, "pattern_polynomial: {}", chain.pattern_poly).unwrap();
    writeln!(out, "closures_equal: {}", chain.closures_equal).unwrap();
    for k in 0..cc.m() {
        writeln!(
            out,
            "Q{}: size {}{}, transpose Q{}",
            k + 1,
            cc.class_size(k),
            if cc.is_diagonal_class(k) {
                ", diagonal"
            } else {
                ""
            },
            cc.transpose_of(k) + 1,
        )
        .unwrap();
    }
    out.push_str("classes:\n");
    out.push_str(&label_matrix(g.n(), 'Q', |s, t| cc.color_of(s, t)));
    Ok(out)
}

pub fn polyenum(g: &Graph, json: bool) -> Result<String> {
    let ys = enumerate_polynomial_graphs(g)?;
    let basis = ys.basis().clone();
    let mut entries = Vec::new();
    let mut out = String::new();
    for (idx, y) in ys.enumerate() {
        let singular = is_singular_polynomial_graph(g, &y.graph)?;
        let spectrum = spectrum_images(&basis, &y.representor);
        let subset: Vec<usize> = y.subset.iter().map(|i| i + 1).collect();
        if json {
            entries.push(json!({
                "subset": subset,
                "graph6": write_graph6(&y.graph),
                "edge_count": y.graph.edge_count(),
                "representor": y.representor.to_string(),
                "singular": singular,
                "spectrum": spectrum.as_ref().map(|s| {
                    s.iter().map(|(t, img)| json!([big(t), rational(img)])).collect::<Vec<_>>()
                }),
            }));
            continue;
        }
        let names: Vec<String> = subset.iter().map(|i| format!("P{i}")).collect();
        write!(
            out,
            "Y{}: {{{}}} graph6 {} edges {} representor {} singular {}",
            idx + 1,
            names.join(", "),
            write_graph6(&y.graph),
            y.graph.edge_count(),
            y.representor,
            singular,
        )
        .unwrap();
        if let Some(s) = spectrum {
            let parts: Vec<String> = s.iter().map(|(t, img)| format!("{t}->{img}")).collect();
            write!(out, " spectrum {}", parts.join(" ")).unwrap();
        }
        out.push('\n');
    }
    if json {
        return Ok(pretty(&entries));
    }
    Ok(out)
}

pub fn designs(x: &Graph, y: &Graph, kind: DesignKind, json: bool) -> Result<String> {
    let d = kind.build(y)?;
    let params = pbibd_parameters(&d, x)?;
    if json {
        return Ok(pretty(&json!({
            "kind": kind.label(),
            "v": d.v(),
            "b": d.b(),
            "parameters": params,
        })));
    }
    let mut out = String::new();
    writeln!(out, "kind: {}", kind.label()).unwrap();
    match params {
        None => {
            writeln!(out, "v: {}", d.v()).unwrap();
            writeln!(out, "b: {}", d.b()).unwrap();
            out.push_str("parameters: none (N N^T is not in the adjacency algebra)\n");
        }
        Some(p) => {
            writeln!(out, "v: {}", p.v).unwrap();
            writeln!(out, "b: {}", p.b).unwrap();
            writeln!(out, "r1: {}", p.r1).unwrap();
            writeln!(out, "k1: {}", p.k1).unwrap();
            writeln!(out, "diag_coefficient: {}", p.diag_coefficient).unwrap();
            let lambdas: Vec<String> = p.lambdas().iter().map(ToString::to_string).collect();
            writeln!(out, "lambda: ({})", lambdas.join(", ")).unwrap();
            for c in &p.lambda {
                writeln!(out, "  P{} {}: {}", c.class + 1, c.description, c.lambda).unwrap();
            }
            writeln!(out, "verified: {}", p.verified).unwrap();
        }
    }
    Ok(out)
}
