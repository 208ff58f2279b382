//! Group elements over any of the three coefficient rings, with the JSON
//! encoding `{"kind", "m", "halfTurn", "matrix"}`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::isogeny::{lift, Liftable, OrthImage};
use crate::matrices::Mat;
use crate::rings::{Quad, Quaternion, Rational};
use crate::symplectic::{GroupElem, GroupKind, ModularRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyElem {
    Siegel(GroupElem<Rational>),
    Hermitian(GroupElem<Quad>),
    Quat(GroupElem<Quaternion>),
}

/// Rings whose elements can be wrapped as an [`AnyElem`].
pub trait ElemRing: Liftable + Send + Sync {
    fn wrap(g: GroupElem<Self>) -> AnyElem;
}

impl ElemRing for Rational {
    fn wrap(g: GroupElem<Self>) -> AnyElem {
        AnyElem::Siegel(g)
    }
}

impl ElemRing for Quad {
    fn wrap(g: GroupElem<Self>) -> AnyElem {
        AnyElem::Hermitian(g)
    }
}

impl ElemRing for Quaternion {
    fn wrap(g: GroupElem<Self>) -> AnyElem {
        AnyElem::Quat(g)
    }
}

fn matrix_json<T: ModularRing>(m: &Mat<T>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(|x| json!(x.to_string())).collect())).collect())
}

fn parse_matrix<T: ModularRing>(v: &Value, proto: &T) -> Result<Mat<T>> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("\"matrix\" must be an array of rows".into()))?;
    if rows.len() != 4 {
        return Err(Error::Parse(format!("\"matrix\" has {} rows, expected 4", rows.len())));
    }
    let mut out = Vec::with_capacity(4);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| Error::Parse(format!("row {} is not an array", i + 1)))?;
        if row.len() != 4 {
            return Err(Error::Parse(format!("row {} has {} entries, expected 4", i + 1, row.len())));
        }
        let mut parsed = Vec::with_capacity(4);
        for (j, x) in row.iter().enumerate() {
            let text = match x {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return Err(Error::Parse(format!("entry ({},{}) must be a string or an integer", i + 1, j + 1))),
            };
            let e = proto.parse_like(&text).map_err(|e| Error::Parse(format!("entry ({},{}): {e}", i + 1, j + 1)))?;
            parsed.push(e);
        }
        out.push(parsed);
    }
    Ok(Mat::from_rows(out))
}

impl AnyElem {
    pub fn kind(&self) -> GroupKind {
        match self {
            AnyElem::Siegel(g) => g.kind,
            AnyElem::Hermitian(g) => g.kind,
            AnyElem::Quat(g) => g.kind,
        }
    }

    pub fn half_turn(&self) -> bool {
        match self {
            AnyElem::Siegel(g) => g.half_turn,
            AnyElem::Hermitian(g) => g.half_turn,
            AnyElem::Quat(g) => g.half_turn,
        }
    }

    pub fn lift(&self) -> Result<OrthImage> {
        match self {
            AnyElem::Siegel(g) => lift(g),
            AnyElem::Hermitian(g) => lift(g),
            AnyElem::Quat(g) => lift(g),
        }
    }

    pub fn identity(kind: GroupKind) -> Result<Self> {
        Ok(match kind {
            GroupKind::Siegel => AnyElem::Siegel(GroupElem::identity(kind)?),
            GroupKind::Hermitian(_) => AnyElem::Hermitian(GroupElem::identity(kind)?),
            _ => AnyElem::Quat(GroupElem::identity(kind)?),
        })
    }

    pub fn to_json(&self) -> Value {
        let (kind, ht, matrix) = match self {
            AnyElem::Siegel(g) => (g.kind, g.half_turn, matrix_json(&g.m)),
            AnyElem::Hermitian(g) => (g.kind, g.half_turn, matrix_json(&g.m)),
            AnyElem::Quat(g) => (g.kind, g.half_turn, matrix_json(&g.m)),
        };
        json!({ "kind": kind.name(), "m": kind.m(), "halfTurn": u8::from(ht), "matrix": matrix })
    }

    /// Parses and validates an element; `kind` overrides the document's own kind.
    pub fn from_json(v: &Value, kind: Option<GroupKind>) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("element must be a JSON object".into()))?;
        let m = match obj.get("m") {
            None | Some(Value::Null) => None,
            Some(x) => Some(
                x.as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| Error::Parse("\"m\" must be a positive integer".into()))?,
            ),
        };
        let kind = match kind {
            Some(k) => k,
            None => {
                let name = obj.get("kind").and_then(Value::as_str).ok_or_else(|| Error::Parse("missing \"kind\"".into()))?;
                GroupKind::parse(name, m)?
            }
        };
        let half_turn = match obj.get("halfTurn") {
            None | Some(Value::Null) => false,
            Some(Value::Bool(b)) => *b,
            Some(x) => match x.as_u64() {
                Some(0) => false,
                Some(1) => true,
                _ => return Err(Error::Parse("\"halfTurn\" must be 0 or 1".into())),
            },
        };
        let mv = obj.get("matrix").ok_or_else(|| Error::Parse("missing \"matrix\"".into()))?;
        fn build<T: ElemRing>(kind: GroupKind, mv: &Value, half_turn: bool) -> Result<AnyElem> {
            let proto = T::proto_for(&kind)?;
            let m = parse_matrix(mv, &proto)?;
            Ok(T::wrap(GroupElem::new(kind, m, half_turn)?))
        }
        match kind {
            GroupKind::Siegel => build::<Rational>(kind, mv, half_turn),
            GroupKind::Hermitian(_) => build::<Quad>(kind, mv, half_turn),
            _ => build::<Quaternion>(kind, mv, half_turn),
        }
    }
}
