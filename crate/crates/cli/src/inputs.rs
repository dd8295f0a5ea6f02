//! Loading groups, homomorphisms, subshifts and presentations from the
//! command line, with the bundled A5 example as the default.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use chebotarev::freewords::HomFile;
use chebotarev::permgroup::GroupFile;
use chebotarev::quotients::IntMatrix;
use chebotarev::{braid_presentation, BraidWord, FiniteGroup, GroupHom, LabeledSFT, Permutation, Presentation, Subgroup, Word};

pub const BUNDLED_SFT: &str = include_str!("../data/a5_sft.json");
pub const BUNDLED_HOM: &str = include_str!("../data/a5_hom.json");

fn read(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// A group given as a file path or a standard name such as `A5` or `D4`.
pub fn load_group(spec: &str) -> Result<FiniteGroup> {
    let file = match GroupFile::named(spec) {
        Some(f) if !Path::new(spec).exists() => f,
        _ => {
            let text = read(Path::new(spec))?;
            serde_json::from_str(&text).with_context(|| format!("parsing group file {spec}"))?
        }
    };
    Ok(file.build()?)
}

pub fn load_hom(path: Option<&Path>) -> Result<GroupHom> {
    let text = match path {
        Some(p) => read(p)?,
        None => BUNDLED_HOM.to_string(),
    };
    let file: HomFile = serde_json::from_str(&text).context("parsing homomorphism file")?;
    Ok(file.build()?)
}

pub fn load_sft(sft: Option<&Path>, hom: Option<&Path>) -> Result<LabeledSFT> {
    let hom = load_hom(hom)?;
    let text = match sft {
        Some(p) => read(p)?,
        None => BUNDLED_SFT.to_string(),
    };
    Ok(LabeledSFT::from_json(&text, hom)?)
}

pub fn load_matrix(path: &Path) -> Result<IntMatrix> {
    Ok(IntMatrix::parse(&read(path)?)?)
}

/// A presentation from a braid (`3:s1 s2^-1`) or from explicit relators.
pub fn presentation(braid: Option<&str>, generators: Option<usize>, relators: &[String]) -> Result<Presentation> {
    match (braid, generators) {
        (Some(b), None) if relators.is_empty() => Ok(braid_presentation(&BraidWord::parse(b)?)),
        (None, Some(n)) => {
            let rels = relators.iter().map(|r| Word::parse(r)).collect::<Result<Vec<_>, _>>()?;
            Ok(Presentation::new(n, rels)?)
        }
        (None, None) => bail!("give either --braid or --generators with optional --relator words"),
        _ => bail!("--braid cannot be combined with --generators or --relator"),
    }
}

/// `stab:N` (1-based point) or generators separated by `;`; defaults to the
/// stabilizer of the last point.
pub fn resolve_subgroup(g: &Arc<FiniteGroup>, spec: Option<&str>) -> Result<Subgroup> {
    let Some(text) = spec else {
        return Ok(g.point_stabilizer(g.degree() - 1)?);
    };
    let text = text.trim();
    if let Some(point) = text.strip_prefix("stab:") {
        let point: usize = point.trim().parse().context("stab:N needs a point number")?;
        if point == 0 || point > g.degree() {
            bail!("point {point} out of range 1..={}", g.degree());
        }
        return Ok(g.point_stabilizer(point - 1)?);
    }
    let gens = text
        .split(';')
        .map(|s| Permutation::parse(g.degree(), s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subgroup::generated_by(g, &gens)?)
}
