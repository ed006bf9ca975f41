use super::{AttachCircle, CurveClass, HandleEvent, Placement, Region, Rhd, Saddle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct RhdParseError {
    pub line: usize,
    pub message: String,
}

/// Parses the line-based decomposition format:
///
/// ```text
/// source <id> split | source <id> hopf <id> | source <id> tube <id>
/// saddle <id> <comp>:<class> <comp>:<class> [region <id>=A|B ...]
/// sink <id> <comp>
/// ```
///
/// with `<class>` one of `disk`, `diskin`, `m`, `l<q>` or `(<p>,<q>)`.
/// Text after `#` is a comment. Anything else is an error.
pub fn parse_rhd(text: &str) -> Result<Rhd, RhdParseError> {
    let mut events = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let err = |message: String| RhdParseError { line: i + 1, message };
        events.push(parse_event(&tokens).map_err(err)?);
    }
    Ok(Rhd::new(events))
}

fn parse_event(t: &[&str]) -> Result<HandleEvent, String> {
    match t {
        ["source", id, "split"] => Ok(HandleEvent::Source {
            id: ident(id)?,
            placement: Placement::Split,
        }),
        ["source", id, "hopf", other] => Ok(HandleEvent::Source {
            id: ident(id)?,
            placement: Placement::Hopf(ident(other)?),
        }),
        ["source", id, "tube", comp] => Ok(HandleEvent::Source {
            id: ident(id)?,
            placement: Placement::Tube(ident(comp)?),
        }),
        ["source", ..] => Err(format!("bad source event: {}", t.join(" "))),
        ["saddle", id, c1, c2, rest @ ..] => {
            let mut saddle = Saddle::new(ident(id)?, circle(c1)?, circle(c2)?);
            match rest {
                [] => {}
                ["region", tags @ ..] if !tags.is_empty() => {
                    for tag in tags {
                        saddle.regions.push(region_tag(tag)?);
                    }
                }
                _ => return Err(format!("unexpected token {:?} after saddle circles", rest[0])),
            }
            Ok(HandleEvent::Saddle(saddle))
        }
        ["saddle", ..] => Err("saddle needs an id and two attaching circles".into()),
        ["sink", id, comp] => Ok(HandleEvent::Sink {
            id: ident(id)?,
            target: ident(comp)?,
        }),
        ["sink", ..] => Err("sink needs an id and a component".into()),
        [other, ..] => Err(format!("unknown event {other:?}")),
        [] => unreachable!(),
    }
}

fn ident(s: &str) -> Result<String, String> {
    let ok = !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'));
    if ok {
        Ok(s.to_string())
    } else {
        Err(format!("invalid identifier {s:?}"))
    }
}

fn circle(s: &str) -> Result<AttachCircle, String> {
    let (comp, class) = s.split_once(':').ok_or_else(|| format!("expected <comp>:<class>, got {s:?}"))?;
    Ok(AttachCircle::new(ident(comp)?, parse_class(class)?))
}

fn int(s: &str) -> Result<i64, String> {
    s.parse().map_err(|_| format!("invalid integer {s:?}"))
}

/// Parses a curve class token.
pub(crate) fn parse_class(s: &str) -> Result<CurveClass, String> {
    let (p, q) = match s {
        "disk" => return Ok(CurveClass::Disk),
        "diskin" => return Ok(CurveClass::NestedDisk),
        "m" => return Ok(CurveClass::MERIDIAN),
        _ if s.starts_with('l') => (1, int(&s[1..])?),
        _ if s.starts_with('(') && s.ends_with(')') => {
            let (p, q) = s[1..s.len() - 1]
                .split_once(',')
                .ok_or_else(|| format!("invalid class {s:?}"))?;
            (int(p)?, int(q)?)
        }
        _ => return Err(format!("invalid class {s:?}")),
    };
    CurveClass::essential(p, q).ok_or_else(|| format!("class ({p},{q}) is not primitive"))
}

fn region_tag(s: &str) -> Result<(String, Region), String> {
    let (id, side) = s.split_once('=').ok_or_else(|| format!("expected <id>=A|B, got {s:?}"))?;
    let region = match side {
        "A" => Region::A,
        "B" => Region::B,
        _ => return Err(format!("region must be A or B, got {side:?}")),
    };
    Ok((ident(id)?, region))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_text() {
        let text = "source s0 tube s1\nsource s1 split\nsource s2 hopf s1\n\
                    saddle x0 s0:l0 s1:(2,3)\nsaddle x1 x0:m x0:m region s2=B\n\
                    sink k0 x1.A\nsink k1 x1.B\n";
        let rhd = parse_rhd(text).unwrap();
        assert_eq!(rhd.events.len(), 7);
        assert_eq!(rhd.to_string(), text);
    }

    #[test]
    fn classes_are_canonicalized() {
        assert_eq!(parse_class("(0,-1)").unwrap(), CurveClass::MERIDIAN);
        assert_eq!(parse_class("(-1,-4)").unwrap(), CurveClass::Essential { p: 1, q: 4 });
        assert_eq!(parse_class("(-2,3)").unwrap(), CurveClass::Essential { p: 2, q: -3 });
        assert_eq!(parse_class("l-2").unwrap(), CurveClass::Essential { p: 1, q: -2 });
        assert!(parse_class("(2,4)").is_err());
        assert!(parse_class("(0,0)").is_err());
        assert!(parse_class("disc").is_err());
    }

    #[test]
    fn strictness() {
        assert_eq!(parse_rhd("source s0 split extra").unwrap_err().line, 1);
        assert!(parse_rhd("# only a comment\n\nsink k0 s0 # trailing").is_ok());
        assert_eq!(parse_rhd("source s0 split\nhandle h0").unwrap_err().line, 2);
        assert!(parse_rhd("saddle x0 s0:m s0:m region").is_err());
        assert!(parse_rhd("saddle x0 s0:m s0:m region s1=C").is_err());
        assert!(parse_rhd("saddle x0 s0 s0:m").is_err());
        assert!(parse_rhd("sink k0 s:0").is_err());
    }
}
