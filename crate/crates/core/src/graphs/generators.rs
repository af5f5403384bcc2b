use super::{Graph, GraphError};

/// Named graph families with fixed labelings.
///
/// * `Complete(n)`, `Empty(n)`: vertices `0..n`.
/// * `Cycle(n)`: `i ~ i+1 (mod n)`. `Path(n)`: `i ~ i+1`.
/// * `Petersen`: outer cycle `0..5`, spokes `i ~ i+5`, inner pentagram
///   `5+i ~ 5+(i+2 mod 5)`.
/// * `Hypercube(d)`: vertices are `d`-bit words, adjacent when they differ
///   in exactly one bit.
/// * `CompleteBipartite(a, b)`: parts `0..a` and `a..a+b`.
/// * `Prism(n)`: `C_n × K_2`, cycles on `0..n` and `n..2n`, rungs `i ~ i+n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    Empty(usize),
    Cycle(usize),
    Path(usize),
    Petersen,
    Hypercube(usize),
    CompleteBipartite(usize, usize),
    Prism(usize),
}

fn invalid(family: &str, reason: &str) -> GraphError {
    GraphError::InvalidSize {
        family: family.to_string(),
        reason: reason.to_string(),
    }
}

pub fn generate(family: Family) -> Result<Graph, GraphError> {
    let g = match family {
        Family::Complete(n) => {
            if n == 0 {
                return Err(invalid("complete", "need n >= 1"));
            }
            Graph::empty(n).complement()
        }
        Family::Empty(n) => {
            if n == 0 {
                return Err(invalid("empty", "need n >= 1"));
            }
            Graph::empty(n)
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(invalid("cycle", "need n >= 3"));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?
        }
        Family::Path(n) => {
            if n == 0 {
                return Err(invalid("path", "need n >= 1"));
            }
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?
        }
        Family::Petersen => {
            let edges =
                (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]);
            Graph::from_edges(10, edges)?
        }
        Family::Hypercube(d) => {
            if d == 0 || d > 16 {
                return Err(invalid("hypercube", "need 1 <= d <= 16"));
            }
            let n = 1usize << d;
            let edges = (0..n)
                .flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b))))
                .filter(|(u, v)| u < v);
            Graph::from_edges(n, edges)?
        }
        Family::CompleteBipartite(a, b) => {
            if a == 0 || b == 0 {
                return Err(invalid("complete-bipartite", "need both parts nonempty"));
            }
            Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))?
        }
        Family::Prism(n) => {
            if n < 3 {
                return Err(invalid("prism", "need n >= 3"));
            }
            let edges =
                (0..n).flat_map(|i| [(i, (i + 1) % n), (n + i, n + (i + 1) % n), (i, i + n)]);
            Graph::from_edges(2 * n, edges)?
        }
    };
    Ok(g)
}

/// Parses a generator spec of the form `name` or `name:param`.
///
/// Recognised: `complete:N`, `empty:N`, `cycle:N`, `path:N`, `petersen`,
/// `hypercube:D`, `complete-bipartite:A,B`, `prism:N`. `kN`, `cN` and
/// `pN` are accepted as shorthands for complete, cycle and path graphs.
pub fn parse_generator_spec(spec: &str) -> Result<Family, GraphError> {
    let spec = spec.trim();
    let (name, param) = match spec.split_once(':') {
        Some((name, param)) => (name, Some(param)),
        None => (spec, None),
    };
    let name = name.to_ascii_lowercase();
    let one = |family: &str| -> Result<usize, GraphError> {
        let p = param.ok_or_else(|| invalid(family, "missing size parameter"))?;
        p.trim()
            .parse()
            .map_err(|_| invalid(family, &format!("'{p}' is not a nonnegative integer")))
    };
    let shorthand = |prefix: char| -> Option<usize> {
        name.strip_prefix(prefix)
            .filter(|rest| !rest.is_empty() && param.is_none())
            .and_then(|rest| rest.parse().ok())
    };
    match name.as_str() {
        "complete" => Ok(Family::Complete(one("complete")?)),
        "empty" => Ok(Family::Empty(one("empty")?)),
        "cycle" => Ok(Family::Cycle(one("cycle")?)),
        "path" => Ok(Family::Path(one("path")?)),
        "hypercube" | "cube" => Ok(Family::Hypercube(one("hypercube")?)),
        "prism" => Ok(Family::Prism(one("prism")?)),
        "petersen" => {
            if param.is_some() {
                return Err(invalid("petersen", "takes no parameter"));
            }
            Ok(Family::Petersen)
        }
        "complete-bipartite" | "kbipartite" => {
            let p = param.ok_or_else(|| invalid("complete-bipartite", "expected A,B"))?;
            let (a, b) = p
                .split_once(',')
                .ok_or_else(|| invalid("complete-bipartite", "expected A,B"))?;
            let parse = |s: &str| {
                s.trim().parse::<usize>().map_err(|_| {
                    invalid(
                        "complete-bipartite",
                        &format!("'{s}' is not a nonnegative integer"),
                    )
                })
            };
            Ok(Family::CompleteBipartite(parse(a)?, parse(b)?))
        }
        _ => {
            if let Some(n) = shorthand('k') {
                Ok(Family::Complete(n))
            } else if let Some(n) = shorthand('c') {
                Ok(Family::Cycle(n))
            } else if let Some(n) = shorthand('p') {
                Ok(Family::Path(n))
            } else {
                Err(GraphError::UnknownFamily(name))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::basic_props;

    #[test]
    fn family_counts() {
        let c6 = generate(Family::Cycle(6)).unwrap();
        assert_eq!(basic_props(&c6).regular, Some(2));

        let p = generate(Family::Petersen).unwrap();
        assert_eq!(p.n(), 10);
        assert_eq!(p.edge_count(), 15);
        assert_eq!(basic_props(&p).regular, Some(3));

        let k2 = generate(Family::Complete(2)).unwrap();
        assert_eq!(k2.edge_count(), 1);

        let q3 = generate(Family::Hypercube(3)).unwrap();
        assert_eq!((q3.n(), q3.edge_count()), (8, 12));

        let k33 = generate(Family::CompleteBipartite(3, 3)).unwrap();
        assert_eq!((k33.n(), k33.edge_count()), (6, 9));

        let prism = generate(Family::Prism(3)).unwrap();
        assert_eq!((prism.n(), prism.edge_count()), (6, 9));
    }

    #[test]
    fn petersen_has_girth_five() {
        let p = generate(Family::Petersen).unwrap();
        for (u, v) in p.edges() {
            assert_eq!(p.common_neighbors(u, v), 0);
        }
        // non-adjacent pairs share exactly one neighbour
        for u in 0..10 {
            for v in u + 1..10 {
                if !p.has_edge(u, v) {
                    assert_eq!(p.common_neighbors(u, v), 1);
                }
            }
        }
    }

    #[test]
    fn invalid_sizes() {
        assert!(generate(Family::Cycle(2)).is_err());
        assert!(generate(Family::Complete(0)).is_err());
        assert!(generate(Family::CompleteBipartite(0, 3)).is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(parse_generator_spec("cycle:6").unwrap(), Family::Cycle(6));
        assert_eq!(parse_generator_spec("petersen").unwrap(), Family::Petersen);
        assert_eq!(
            parse_generator_spec("hypercube:3").unwrap(),
            Family::Hypercube(3)
        );
        assert_eq!(parse_generator_spec("path:3").unwrap(), Family::Path(3));
        assert_eq!(
            parse_generator_spec("complete-bipartite:3,4").unwrap(),
            Family::CompleteBipartite(3, 4)
        );
        assert_eq!(parse_generator_spec("k4").unwrap(), Family::Complete(4));
        assert_eq!(parse_generator_spec("C6").unwrap(), Family::Cycle(6));
        assert!(matches!(
            parse_generator_spec("dodecahedron"),
            Err(GraphError::UnknownFamily(_))
        ));
        assert!(matches!(
            parse_generator_spec("cycle:x"),
            Err(GraphError::InvalidSize { .. })
        ));
        assert!(parse_generator_spec("cycle").is_err());
    }
}
