//! Plain-text `key=value` noise configuration.
//!
//! Recognized keys: `pe` (sets all four rates), `p1`, `p2`, `pp`, `pm`
//! (specific keys override `pe`). Blank lines and `#` comments are skipped.

use anyhow::{bail, Context};
use psthresh::noise::CircuitNoiseParams;

pub fn parse_noise_config(text: &str) -> anyhow::Result<CircuitNoiseParams> {
    let mut pe = None;
    let mut p1 = None;
    let mut p2 = None;
    let mut pp = None;
    let mut pm = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected key=value, got `{line}`", i + 1);
        };
        let value: f64 = value
            .trim()
            .parse()
            .with_context(|| format!("config line {}: `{}` is not a number", i + 1, value.trim()))?;
        match key.trim() {
            "pe" | "p_e" => pe = Some(value),
            "p1" => p1 = Some(value),
            "p2" => p2 = Some(value),
            "pp" | "p_p" => pp = Some(value),
            "pm" | "p_m" => pm = Some(value),
            other => bail!("config line {}: unknown key `{other}`", i + 1),
        }
    }
    let base = pe.unwrap_or(0.0);
    let params = CircuitNoiseParams::new(
        p1.unwrap_or(base),
        p2.unwrap_or(base),
        pp.unwrap_or(base),
        pm.unwrap_or(base),
    )?;
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_then_override() {
        let p = parse_noise_config("pe = 0.01\npm = 0.02  # readout is worse\n").unwrap();
        assert_eq!(p.p1, 0.01);
        assert_eq!(p.p2, 0.01);
        assert_eq!(p.pp, 0.01);
        assert_eq!(p.pm, 0.02);
    }

    #[test]
    fn rejects_unknown_keys_and_garbage() {
        assert!(parse_noise_config("px = 0.1\n").is_err());
        assert!(parse_noise_config("pe 0.1\n").is_err());
        assert!(parse_noise_config("pe = lots\n").is_err());
    }
}
