use serde_json::Value;

use super::{Arc, DiagramError, PlanarDiagram};

/// Parses `PD[X[a,b,c,d],...]`, a JSON array of 4-tuples, or a JSON object
/// `{"pd": ..., "basepoint": a, "band_site": [a, b]}`. Unknown object keys
/// (source notes and the like) are ignored.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let t = text.trim();
    if t.starts_with('{') || t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|e| DiagramError::Syntax(e.to_string()))?;
        from_json(&v)
    } else {
        let crossings = parse_text(t)?;
        if crossings.is_empty() {
            return Err(DiagramError::Empty);
        }
        PlanarDiagram::from_crossings(crossings, 0)
    }
}

fn parse_text(t: &str) -> Result<Vec<[Arc; 4]>, DiagramError> {
    let s: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    let body =
        s.strip_prefix("PD[").and_then(|r| r.strip_suffix(']')).ok_or_else(|| DiagramError::Syntax("expected PD[...]".into()))?;
    let mut out = Vec::new();
    let mut rest = body;
    while !rest.is_empty() {
        let inner = rest.strip_prefix("X[").ok_or_else(|| DiagramError::Syntax(format!("expected X[ at `{rest}`")))?;
        let close = inner.find(']').ok_or_else(|| DiagramError::Syntax("unclosed X[".into()))?;
        let nums: Vec<&str> = inner[..close].split(',').collect();
        if nums.len() != 4 {
            return Err(DiagramError::Syntax(format!("crossing `{}` needs 4 arcs", &inner[..close])));
        }
        let mut x = [0; 4];
        for (slot, n) in x.iter_mut().zip(&nums) {
            *slot = n.parse().map_err(|_| DiagramError::Syntax(format!("bad arc label `{n}`")))?;
        }
        out.push(x);
        rest = &inner[close + 1..];
        if let Some(r) = rest.strip_prefix(',') {
            if r.is_empty() {
                return Err(DiagramError::Syntax("trailing comma".into()));
            }
            rest = r;
        } else if !rest.is_empty() {
            return Err(DiagramError::Syntax(format!("unexpected `{rest}`")));
        }
    }
    Ok(out)
}

fn tuples(v: &Value) -> Result<Vec<[Arc; 4]>, DiagramError> {
    if let Some(s) = v.as_str() {
        return parse_text(s.trim());
    }
    let arr = v.as_array().ok_or_else(|| DiagramError::Syntax("pd must be an array".into()))?;
    arr.iter()
        .map(|x| {
            let xs = x.as_array().filter(|a| a.len() == 4).ok_or_else(|| DiagramError::Syntax(format!("bad crossing {x}")))?;
            let mut out = [0; 4];
            for (slot, n) in out.iter_mut().zip(xs) {
                *slot = n
                    .as_u64()
                    .and_then(|n| Arc::try_from(n).ok())
                    .ok_or_else(|| DiagramError::Syntax(format!("bad arc label {n}")))?;
            }
            Ok(out)
        })
        .collect()
}

fn arc_field(v: &Value, key: &str) -> Result<Option<Arc>, DiagramError> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(x) => {
            x.as_u64().and_then(|n| Arc::try_from(n).ok()).map(Some).ok_or_else(|| DiagramError::Syntax(format!("bad {key}")))
        }
    }
}

fn from_json(v: &Value) -> Result<PlanarDiagram, DiagramError> {
    if v.is_array() {
        let crossings = tuples(v)?;
        if crossings.is_empty() {
            return Err(DiagramError::Empty);
        }
        return PlanarDiagram::from_crossings(crossings, 0);
    }
    let pd = v.get("pd").ok_or_else(|| DiagramError::Syntax("missing \"pd\"".into()))?;
    let crossings = tuples(pd)?;
    let free_loops = v.get("free_loops").and_then(Value::as_u64).unwrap_or(0) as usize;
    let mut d = if crossings.is_empty() {
        if free_loops == 0 {
            return Err(DiagramError::Empty);
        }
        PlanarDiagram::unlink(free_loops)
    } else {
        PlanarDiagram::from_crossings(crossings, free_loops)?
    };
    if let Some(b) = arc_field(v, "basepoint")? {
        d = d.with_basepoint(b)?;
    }
    match v.get("band_site") {
        None | Some(Value::Null) => {}
        Some(site) => {
            let pair = site
                .as_array()
                .filter(|a| a.len() == 2)
                .and_then(|a| Some((Arc::try_from(a[0].as_u64()?).ok()?, Arc::try_from(a[1].as_u64()?).ok()?)))
                .ok_or_else(|| DiagramError::Syntax("band_site must be [arc, arc]".into()))?;
            d = d.with_band_site(pair.0, pair.1)?;
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_agree() {
        let a = parse_pd(" PD[ X[1, 3,2,4] ,X[3,1,4,2] ]").unwrap();
        let b = parse_pd("[[1,3,2,4],[3,1,4,2]]").unwrap();
        let c = parse_pd(r#"{"pd": [[1,3,2,4],[3,1,4,2]], "source": "hand"}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_pd("PD[]"), Err(DiagramError::Empty));
        assert!(matches!(parse_pd("PD[X[1,2,3]]"), Err(DiagramError::Syntax(_))));
        assert!(matches!(parse_pd("PD[X[1,2,3,4]]"), Err(DiagramError::ArcMultiplicity { .. })));
        assert!(matches!(parse_pd("PD[X[1,1,2,2],]"), Err(DiagramError::Syntax(_))));
        assert!(matches!(parse_pd("{\"pd\": [[1,1,2,2]], \"basepoint\": 7}"), Err(DiagramError::UnknownArc(7))));
        assert!(matches!(parse_pd("nonsense"), Err(DiagramError::Syntax(_))));
    }

    #[test]
    fn fixture_fields() {
        let d = parse_pd(r#"{"pd": [[1,1,2,2]], "basepoint": 2, "band_site": [1, 2]}"#).unwrap();
        assert_eq!(d.basepoint(), Some(2));
        assert_eq!(d.band_site(), Some((1, 2)));
        let u = parse_pd(r#"{"pd": [], "free_loops": 1}"#).unwrap();
        assert_eq!(u.crossing_count(), 0);
        assert!(u.is_knot());
    }
}
