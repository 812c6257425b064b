//! Textual point, cylinder and model arguments.

use num_bigint::BigUint;
use symdyn_core::construction::{c_runs, closing_point, point_x, point_y, q_word, w_word};
use symdyn_core::dynamics::{
    block_family_model, construction_model, default_choosers, family_member, growing_zeros_model,
    truncated_growing_zeros, GrowingZeros, SpaceModel,
};
use symdyn_core::{Cylinder, Generator, RleWord, SymbolicPoint};

use crate::args::ModelName;
use crate::report::CliError;

/// Sampled members of the block family.
pub const FAMILY_MEMBERS: usize = 2;

pub fn build_model(name: ModelName, depth: u64) -> Result<SpaceModel, CliError> {
    Ok(match name {
        ModelName::Construction => construction_model(depth),
        ModelName::BlockFamily => {
            block_family_model(2, &default_choosers(2, FAMILY_MEMBERS), depth)?
        }
        ModelName::GrowingZeros => growing_zeros_model(20, 20, depth)?,
    })
}

fn alphabet(model: ModelName) -> u16 {
    match model {
        ModelName::BlockFamily => 3,
        _ => 2,
    }
}

pub fn parse_big(text: &str) -> Result<BigUint, CliError> {
    text.parse()
        .map_err(|_| CliError::Usage(format!("not a nonnegative integer: {text:?}")))
}

fn parse_u32(text: &str, what: &str) -> Result<u32, CliError> {
    text.parse()
        .map_err(|_| CliError::Usage(format!("{what} needs an integer, got {text:?}")))
}

fn digits(text: &str, alphabet: u16) -> Result<RleWord, CliError> {
    let symbols = text
        .chars()
        .map(|c| {
            c.to_digit(10)
                .map(|d| d as u8)
                .ok_or_else(|| CliError::Usage(format!("not a digit word: {text:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RleWord::from_symbols(alphabet, &symbols)?)
}

/// `x`, `y`, `closing:N`, `zero`, `one`, `10inf`, `periodic:PRE/PER`,
/// `member:I`, `z:N`, each optionally followed by `@T` for a shift by `T`.
/// `x` names the model's base point.
pub fn parse_point(text: &str, model: ModelName) -> Result<SymbolicPoint, CliError> {
    let (base, shift) = match text.split_once('@') {
        Some((b, t)) => (b, Some(parse_big(t)?)),
        None => (text, None),
    };
    let a = alphabet(model);
    let p = match base.split_once(':') {
        None => match (base, model) {
            ("x", ModelName::Construction) => point_x(),
            ("x", ModelName::BlockFamily) => member(0)?,
            ("x", ModelName::GrowingZeros) => {
                SymbolicPoint::new(Generator::GrowingZeros(GrowingZeros))
            }
            ("y", ModelName::Construction) => point_y(),
            ("y", ModelName::BlockFamily) => member(1)?,
            ("zero", _) => {
                SymbolicPoint::eventually_periodic(RleWord::empty(a), RleWord::repeat(a, 0, 1u32)?)?
            }
            ("one", _) => {
                SymbolicPoint::eventually_periodic(RleWord::empty(a), RleWord::repeat(a, 1, 1u32)?)?
            }
            ("10inf", _) => {
                SymbolicPoint::eventually_periodic(digits("1", a)?, RleWord::repeat(a, 0, 1u32)?)?
            }
            _ => {
                return Err(CliError::Usage(format!(
                    "unknown point {text:?} for this model"
                )))
            }
        },
        Some(("closing", n)) => closing_point(parse_u32(n, "closing")?),
        Some(("member", i)) => member(parse_u32(i, "member")? as usize)?,
        Some(("z", n)) => truncated_growing_zeros(u64::from(parse_u32(n, "z")?)),
        Some(("periodic", body)) => {
            let (pre, per) = body
                .split_once('/')
                .ok_or_else(|| CliError::Usage(format!("periodic needs PRE/PER, got {body:?}")))?;
            let pre = if pre.is_empty() {
                RleWord::empty(a)
            } else {
                digits(pre, a)?
            };
            SymbolicPoint::eventually_periodic(pre, digits(per, a)?)?
        }
        _ => return Err(CliError::Usage(format!("unknown point text {text:?}"))),
    };
    Ok(match shift {
        Some(t) => p.shift(&t),
        None => p,
    })
}

fn member(i: usize) -> Result<SymbolicPoint, CliError> {
    let chooser = default_choosers(2, i + 1)[i];
    Ok(family_member(2, chooser)?)
}

/// Concatenation of `C:n`, `Q:n`, `W:n`, `word:<rle-json>` and
/// `bits:<digits>` parts joined by `+`.
pub fn parse_cylinder(text: &str, model: ModelName) -> Result<Cylinder, CliError> {
    let a = alphabet(model);
    let mut word = RleWord::empty(a);
    for part in text.split('+') {
        let (tag, body) = part.split_once(':').ok_or_else(|| {
            CliError::Usage(format!("cylinder part needs TAG:VALUE, got {part:?}"))
        })?;
        let piece = match tag {
            "C" => c_runs(parse_u32(body, "C")?),
            "Q" => q_word(parse_u32(body, "Q")?)?,
            "W" => w_word(parse_u32(body, "W")?),
            "word" => RleWord::from_json(body)?,
            "bits" => digits(body, a)?,
            _ => return Err(CliError::Usage(format!("unknown cylinder part {part:?}"))),
        };
        word = word.concat(&piece)?;
    }
    Ok(Cylinder::new(word)?)
}

/// Binary digits, or an RLE word as JSON.
pub fn parse_word(text: &str) -> Result<RleWord, CliError> {
    if text.trim_start().starts_with('{') {
        Ok(RleWord::from_json(text)?)
    } else {
        digits(text, 2)
    }
}
