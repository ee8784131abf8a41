use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::braid::Sign;
use crate::foliation::{SkSing, Skeleton};

/// Canonical byte key of a disc up to rotation of the θ circle and of the
/// axis circle. Displayed (and stored on disk) as lowercase hex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiscSignature(pub Vec<u8>);

impl fmt::Display for DiscSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed disc signature {0:?}")]
pub struct SignatureParseError(pub String);

impl FromStr for DiscSignature {
    type Err = SignatureParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if !s.len().is_multiple_of(2) || !s.bytes().all(|c| c.is_ascii_hexdigit()) {
            return Err(SignatureParseError(s.to_string()));
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16))
            .collect::<Result<Vec<u8>, _>>()
            .map(DiscSignature)
            .map_err(|_| SignatureParseError(s.to_string()))
    }
}

const NONE: u8 = 0xff;

fn sign_byte(s: Sign) -> u8 {
    if s.is_pos() {
        1
    } else {
        0
    }
}

fn encode_into(sk: &Skeleton, dt: usize, da: usize, out: &mut Vec<u8>) {
    let (v, s) = (sk.v(), sk.s());
    out.clear();
    out.push(v as u8);
    out.push(s as u8);
    for i in 0..v {
        out.push(sign_byte(sk.vsign[(i + v - da) % v]));
    }
    for i in 0..s {
        let sg = &sk.sings[(i + s - dt) % s];
        let slots =
            SkSing::canonical_slots(sg.slots.map(|x| x.map(|r| ((r as usize + da) % v) as u8)));
        out.push(sign_byte(sg.sign));
        out.extend(slots.map(|x| x.unwrap_or(NONE)));
    }
}

/// The rotation `(dt, da)` whose encoding is least.
fn best_rotation(sk: &Skeleton) -> (usize, usize, Vec<u8>) {
    let (v, s) = (sk.v(), sk.s().max(1));
    let mut best: Option<(usize, usize, Vec<u8>)> = None;
    let mut buf = Vec::with_capacity(2 + v + 5 * sk.s());
    // The vertex block leads the encoding, so only rotations that put a
    // vertex of the least-encoded sign first can win.
    let lead = sk.vsign.iter().map(|&g| sign_byte(g)).min().unwrap_or(0);
    for da in 0..v {
        if sign_byte(sk.vsign[(v - da) % v]) != lead {
            continue;
        }
        for dt in 0..s {
            encode_into(sk, dt, da, &mut buf);
            if best.as_ref().is_none_or(|b| buf < b.2) {
                best = Some((dt, da, buf.clone()));
            }
        }
    }
    best.expect("at least one vertex")
}

impl DiscSignature {
    /// The canonical representative this signature encodes.
    pub fn to_skeleton(&self) -> Option<Skeleton> {
        let b = &self.0;
        let (v, s) = (*b.first()? as usize, *b.get(1)? as usize);
        if b.len() != 2 + v + 5 * s {
            return None;
        }
        let sign = |x: u8| match x {
            0 => Some(Sign::Neg),
            1 => Some(Sign::Pos),
            _ => None,
        };
        let vsign = b[2..2 + v]
            .iter()
            .map(|&x| sign(x))
            .collect::<Option<Vec<_>>>()?;
        let sings = b[2 + v..]
            .chunks(5)
            .map(|c| {
                let slots = [c[1], c[2], c[3], c[4]].map(|x| (x != NONE).then_some(x));
                Some(SkSing {
                    sign: sign(c[0])?,
                    slots,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Skeleton { vsign, sings })
    }
}

pub fn canonical_signature(sk: &Skeleton) -> DiscSignature {
    DiscSignature(best_rotation(sk).2)
}

/// The representative of the rotation class of `sk` whose encoding is the
/// signature, with every singularity's slots in canonical position.
pub fn canonical_form(sk: &Skeleton) -> Skeleton {
    let (dt, da, _) = best_rotation(sk);
    let mut out = sk.rotated(dt, da);
    for sg in &mut out.sings {
        sg.slots = SkSing::canonical_slots(sg.slots);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::fig6_skeleton;

    #[test]
    fn invariant_under_rotations() {
        let sk = fig6_skeleton();
        let sig = canonical_signature(&sk);
        for dt in 0..sk.s() {
            for da in 0..sk.v() {
                assert_eq!(canonical_signature(&sk.rotated(dt, da)), sig);
            }
        }
        assert_eq!(canonical_signature(&canonical_form(&sk)), sig);
        assert_eq!(sig.to_skeleton().unwrap(), canonical_form(&sk));
    }

    #[test]
    fn hex_round_trip() {
        let sig = canonical_signature(&fig6_skeleton());
        assert_eq!(sig.to_string().parse::<DiscSignature>().unwrap(), sig);
        assert!("abc".parse::<DiscSignature>().is_err());
    }
}
