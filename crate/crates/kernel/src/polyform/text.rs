//! Canonical text form (`c * l0^a0 l1^a1 ^ dl1^dl2`) and a unicode rendering.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{Builder, Mono, PolyForm, MAX_LABELS};
use crate::combinatorics::mask_labels;
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational};
use crate::simplex::Face;

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((m, a), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if a.iter().any(|&e| e > 0) {
                write!(f, " *")?;
                for (l, &e) in a.iter().enumerate() {
                    if e > 0 {
                        write!(f, " l{l}^{e}")?;
                    }
                }
            }
            if *m != 0 {
                let parts: Vec<String> = mask_labels(*m).iter().map(|l| format!("dl{l}")).collect();
                write!(f, " ^ {}", parts.join("^"))?;
            }
        }
        Ok(())
    }
}

fn parse_label(s: &str, prefix: &str) -> Result<usize> {
    s.strip_prefix(prefix)
        .and_then(|r| r.parse::<usize>().ok())
        .filter(|&l| l < MAX_LABELS)
        .ok_or_else(|| Error::Parse(format!("bad factor {s:?}")))
}

impl PolyForm {
    /// Parses the canonical text form. Terms need not be canonical: generators
    /// may include the first label and degrees may differ.
    pub fn parse(face: Face, k: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut b = Builder::new(face, k);
        if text == "0" {
            return Ok(b.finish());
        }
        for term in text.split(" + ") {
            let (scalar_part, form_part) = match term.split_once(" ^ ") {
                Some((s, f)) => (s, Some(f)),
                None => (term, None),
            };
            let (coeff, mono_part) = match scalar_part.split_once(" * ") {
                Some((c, m)) => (c, Some(m)),
                None => (scalar_part, None),
            };
            let c = parse_rational(coeff)?;
            let mut mono: Mono = [0; MAX_LABELS];
            for factor in mono_part.into_iter().flat_map(str::split_whitespace) {
                let (base, exp) = factor.split_once('^').unwrap_or((factor, "1"));
                let l = parse_label(base, "l")?;
                let e: u8 = exp
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                mono[l] += e;
            }
            let mut mask = 0u16;
            let mut seq = Vec::new();
            for g in form_part.into_iter().flat_map(|f| f.split('^')) {
                let l = parse_label(g.trim(), "dl")?;
                if mask & (1 << l) != 0 {
                    mask = u16::MAX;
                    break;
                }
                mask |= 1 << l;
                seq.push(l);
            }
            if mask == u16::MAX {
                continue;
            }
            if seq.len() != k {
                return Err(Error::Parse(format!("term {term:?} is not a {k}-form")));
            }
            if mask & !face.mask() != 0 || super::mono_support(&mono) & !face.mask() != 0 {
                return Err(Error::Parse(format!(
                    "term {term:?} uses labels outside {face}"
                )));
            }
            let sign = crate::combinatorics::permutation_sign(&seq);
            b.add(mask, mono, if sign < 0 { -c } else { c });
        }
        Ok(b.finish())
    }

    /// Unicode rendering such as `λ₁λ₂²dλ₃ − (1/3)λ₀λ₁λ₂λ₃`.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut items: Vec<(Rational, String)> = Vec::new();
        for ((m, a), c) in &self.terms {
            let mut body = mono_pretty(a);
            for l in mask_labels(*m) {
                body.push_str(&format!("dλ{}", subscript(l)));
            }
            items.push((c.clone(), body));
        }
        join_signed(&items)
    }
}

/// Joins `coefficient · body` items with unicode signs.
pub fn join_signed(items: &[(Rational, String)]) -> String {
    let mut out = String::new();
    for (i, (c, body)) in items.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('−');
            }
        } else {
            out.push_str(if neg { " − " } else { " + " });
        }
        out.push_str(&coeff_prefix(&c.abs(), body.is_empty()));
        out.push_str(body);
    }
    out
}

/// `1 → ""`, `2 → "2"`, `1/3 → "(1/3)"`; a bare coefficient is always printed.
pub fn coeff_prefix(c: &Rational, bare: bool) -> String {
    if c.is_one() && !bare {
        String::new()
    } else if c.is_integer() || c.is_zero() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

pub fn subscript(l: usize) -> String {
    l.to_string()
        .chars()
        .map(|ch| char::from_u32(0x2080 + ch.to_digit(10).expect("digit")).expect("subscript"))
        .collect()
}

pub fn superscript(e: u32) -> String {
    e.to_string()
        .chars()
        .map(|ch| match ch {
            '1' => '¹',
            '2' => '²',
            '3' => '³',
            d => char::from_u32(0x2070 + d.to_digit(10).expect("digit")).expect("superscript"),
        })
        .collect()
}

pub fn mono_pretty(a: &Mono) -> String {
    let mut s = String::new();
    for (l, &e) in a.iter().enumerate() {
        if e > 0 {
            s.push_str(&format!("λ{}", subscript(l)));
            if e > 1 {
                s.push_str(&superscript(e as u32));
            }
        }
    }
    s
}
