//! The search driver: enumerate discs of the input's braid index in order
//! of increasing complexity and test each boundary braid for conjugacy
//! with the input. A match is an unknotting certificate.

use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidError, BraidWord};
use crate::enumerate::{self, CacheError, Complexity, EnumeratedDisc};
use crate::foliation::{parse_surface, write_surface, FoliationError, TiledSurface};
use crate::garside::{
    summit_element, GarsideError, NormalForm, SuperSummitSet, DEFAULT_SUMMIT_CAP,
};
use crate::halting::vertex_bound;
use crate::vogel::{to_closed_braid, KnotDiagram, VogelError};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum RecognizeError {
    #[error("closed braid has {0} components; only knots are recognized")]
    NotAKnot(usize),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Diagram(#[from] VogelError),
    #[error("super summit set of the input: {0}")]
    Summit(#[from] GarsideError),
    #[error(transparent)]
    Cache(#[from] CacheError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Word(BraidWord),
    Diagram(KnotDiagram),
}

impl Input {
    pub fn to_word(&self) -> Result<BraidWord, RecognizeError> {
        match self {
            Input::Word(w) => Ok(w.clone()),
            Input::Diagram(d) => Ok(to_closed_braid(d)?),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RecognizeOptions {
    /// Largest vertex count searched.
    pub cutoff: usize,
    pub cache_dir: Option<PathBuf>,
    pub summit_cap: usize,
}

impl Default for RecognizeOptions {
    fn default() -> Self {
        RecognizeOptions {
            cutoff: 8,
            cache_dir: None,
            summit_cap: DEFAULT_SUMMIT_CAP,
        }
    }
}

/// Everything needed to re-check an unknotting claim without a cache.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: String,
    pub input: BraidWord,
    pub complexity: Complexity,
    /// The disc, in the surface text format.
    pub disc: String,
    pub extended_word: BraidWord,
    pub deleted: Vec<usize>,
    pub boundary_word: BraidWord,
    pub summit_inf: i64,
    pub summit_sup: i64,
    pub input_summit: String,
    pub boundary_summit: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Unknot(Box<Certificate>),
    NotFoundUpTo(usize),
    Knotted { cutoff: usize },
}

impl Verdict {
    /// Process exit status for the verdict.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Unknot(_) => 0,
            Verdict::NotFoundUpTo(_) => 1,
            Verdict::Knotted { .. } => 2,
        }
    }
}

fn certificate_for(input: &BraidWord, d: &EnumeratedDisc) -> Result<Certificate, FoliationError> {
    let fs = TiledSurface::from_skeleton(&d.skeleton)?;
    let b = d.skeleton.boundary_word()?;
    let si = summit_element(&NormalForm::from_word(input));
    let sb = summit_element(&NormalForm::from_word(&b.word));
    Ok(Certificate {
        version: TOOL_VERSION.to_string(),
        input: input.clone(),
        complexity: d.complexity,
        disc: write_surface(&fs),
        extended_word: b.extended,
        deleted: b.deleted,
        boundary_word: b.word,
        summit_inf: si.inf(),
        summit_sup: si.sup(),
        input_summit: si.to_string(),
        boundary_summit: sb.to_string(),
    })
}

fn layer(
    n: usize,
    v: usize,
    cache: Option<&PathBuf>,
) -> Result<Vec<EnumeratedDisc>, RecognizeError> {
    let c = Complexity { n, v };
    if let Some(root) = cache {
        if let Some(l) = enumerate::read_layer(root, c)? {
            return Ok(l);
        }
        let l = enumerate::enumerate_complexity(c);
        enumerate::write_layer(root, c, &l)?;
        return Ok(l);
    }
    Ok(enumerate::enumerate_complexity(c))
}

/// Runs the search; `on_layer` is told the size of each layer searched.
pub fn recognize_with(
    input: &Input,
    opts: &RecognizeOptions,
    mut on_layer: impl FnMut(Complexity, usize),
) -> Result<Verdict, RecognizeError> {
    let k = input.to_word()?;
    let comps = k.components().len();
    if comps != 1 {
        return Err(RecognizeError::NotAKnot(comps));
    }
    let n = k.strands();
    let e = k.exponent_sum();
    let mut sss: Option<SuperSummitSet> = None;
    let mut v = n;
    while v <= opts.cutoff {
        let discs = layer(n, v, opts.cache_dir.as_ref())?;
        on_layer(Complexity { n, v }, discs.len());
        // exponent sum is a cheap conjugacy invariant
        if discs.iter().any(|d| d.word.exponent_sum() == e) {
            if sss.is_none() {
                sss = Some(SuperSummitSet::of_word(&k, opts.summit_cap)?);
            }
            let set = sss.as_ref().expect("just computed");
            let hit = discs
                .par_iter()
                .find_first(|d| d.word.exponent_sum() == e && set.contains_conjugate_of(&d.word));
            if let Some(d) = hit {
                let cert = certificate_for(&k, d).expect("enumerated discs have boundary data");
                return Ok(Verdict::Unknot(Box::new(cert)));
            }
        }
        v += 2;
    }
    let artin = k.band_to_artin().len() as u64;
    if let Ok(bound) = vertex_bound(n as u64, artin) {
        if num_bigint::BigUint::from(opts.cutoff) >= bound {
            return Ok(Verdict::Knotted {
                cutoff: opts.cutoff,
            });
        }
    }
    Ok(Verdict::NotFoundUpTo(opts.cutoff))
}

pub fn recognize(input: &Input, opts: &RecognizeOptions) -> Result<Verdict, RecognizeError> {
    recognize_with(input, opts, |_, _| {})
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("certificate check failed: {0}")]
    Check(String),
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), CertificateError> {
    if ok {
        Ok(())
    } else {
        Err(CertificateError::Check(msg.into()))
    }
}

impl Certificate {
    /// Replays every check from the certificate's own contents.
    pub fn verify(&self) -> Result<(), CertificateError> {
        let fail = |e: &dyn std::fmt::Display| CertificateError::Check(e.to_string());
        let fs = parse_surface(&self.disc).map_err(|e| fail(&e))?;
        let report = fs.validate();
        check(
            report.is_valid(),
            format!("disc is not a valid tiled surface: {:?}", report.violations),
        )?;
        check(fs.is_disc(), "surface is not a disc")?;
        check(
            fs.embeddability_test()
                .map_err(|e| fail(&e))?
                .is_embeddable(),
            "disc fails the embeddability test",
        )?;
        check(
            fs.embeddability_test_full()
                .map_err(|e| fail(&e))?
                .is_embeddable(),
            "disc fails the long-form embeddability test",
        )?;
        check(
            fs.essentiality_test().map_err(|e| fail(&e))?.is_none(),
            "disc is inessential",
        )?;
        let b = fs.boundary_word().map_err(|e| fail(&e))?;
        check(
            b.extended == self.extended_word,
            "extended boundary word does not match the disc",
        )?;
        check(
            b.deleted == self.deleted,
            "deleted circles do not match the disc",
        )?;
        check(
            b.word == self.boundary_word,
            "boundary word does not match the disc",
        )?;
        let c = self.complexity;
        check(
            fs.vertices.len() == c.v
                && self.boundary_word.strands() == c.n
                && self.input.strands() == c.n,
            "complexity does not match",
        )?;
        let si = summit_element(&NormalForm::from_word(&self.input));
        let sb = summit_element(&NormalForm::from_word(&self.boundary_word));
        check(
            si.to_string() == self.input_summit,
            "input summit element does not match",
        )?;
        check(
            sb.to_string() == self.boundary_summit,
            "boundary summit element does not match",
        )?;
        check(
            (si.inf(), si.sup()) == (self.summit_inf, self.summit_sup),
            "summit inf/sup do not match",
        )?;
        let conj =
            crate::garside::conjugate_test(&self.input, &self.boundary_word, DEFAULT_SUMMIT_CAP)
                .map_err(|e| fail(&e))?;
        check(conj, "boundary word is not conjugate to the input")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "unknot-certificate");
        let _ = writeln!(s, "version: {}", self.version);
        let _ = writeln!(s, "input: {}", self.input);
        let _ = writeln!(
            s,
            "complexity: n={} v={}",
            self.complexity.n, self.complexity.v
        );
        let _ = writeln!(s, "extended-word: {}", self.extended_word);
        let deleted: Vec<String> = self.deleted.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "deleted: {}", deleted.join(" "));
        let _ = writeln!(s, "boundary-word: {}", self.boundary_word);
        let _ = writeln!(s, "summit-inf: {}", self.summit_inf);
        let _ = writeln!(s, "summit-sup: {}", self.summit_sup);
        let _ = writeln!(s, "input-summit: {}", self.input_summit);
        let _ = writeln!(s, "boundary-summit: {}", self.boundary_summit);
        let _ = writeln!(s, "disc:");
        s.push_str(&self.disc);
        s
    }

    pub fn from_text(text: &str) -> Result<Certificate, CertificateError> {
        let mut lines = text.lines().enumerate();
        let perr = |line: usize, msg: String| CertificateError::Parse {
            line: line + 1,
            msg,
        };
        match lines.next() {
            Some((_, "unknot-certificate")) => {}
            _ => return Err(perr(0, "missing header line".into())),
        }
        let mut field = |key: &str| -> Result<(usize, String), CertificateError> {
            let (i, l) = lines
                .next()
                .ok_or_else(|| perr(usize::MAX - 1, format!("missing {key}")))?;
            let v = l
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix(':'))
                .ok_or_else(|| perr(i, format!("expected {key}:")))?;
            Ok((i, v.trim().to_string()))
        };
        let (_, version) = field("version")?;
        let word =
            |(i, s): (usize, String)| s.parse::<BraidWord>().map_err(|e| perr(i, e.to_string()));
        let input = word(field("input")?)?;
        let (ci, cs) = field("complexity")?;
        let complexity = (|| {
            let (a, b) = cs.split_once(' ')?;
            Some(Complexity {
                n: a.strip_prefix("n=")?.parse().ok()?,
                v: b.strip_prefix("v=")?.parse().ok()?,
            })
        })()
        .ok_or_else(|| perr(ci, format!("bad complexity {cs:?}")))?;
        let extended_word = word(field("extended-word")?)?;
        let (di, ds) = field("deleted")?;
        let deleted = ds
            .split_whitespace()
            .map(|x| x.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| perr(di, e.to_string()))?;
        let boundary_word = word(field("boundary-word")?)?;
        let int = |(i, s): (usize, String)| s.parse::<i64>().map_err(|e| perr(i, e.to_string()));
        let summit_inf = int(field("summit-inf")?)?;
        let summit_sup = int(field("summit-sup")?)?;
        let (_, input_summit) = field("input-summit")?;
        let (_, boundary_summit) = field("boundary-summit")?;
        let (i, l) = lines.next().ok_or_else(|| perr(0, "missing disc".into()))?;
        if l != "disc:" {
            return Err(perr(i, "expected disc:".into()));
        }
        let mut disc = String::new();
        for (_, l) in lines {
            disc.push_str(l);
            disc.push('\n');
        }
        Ok(Certificate {
            version,
            input,
            complexity,
            disc,
            extended_word,
            deleted,
            boundary_word,
            summit_inf,
            summit_sup,
            input_summit,
            boundary_summit,
        })
    }
}
