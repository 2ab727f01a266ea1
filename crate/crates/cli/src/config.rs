//! `key = value` configuration files for the trace command. Lines starting
//! with `#` are comments; unknown keys are errors.

use branchforge::continuation::ContinuationConfig;

pub fn apply_config_file(text: &str, config: &mut ContinuationConfig) -> Result<(), String> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("line {}: expected `key = value`", lineno + 1));
        };
        let key = key.trim();
        let value = value.trim();
        let parse_f64 = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| format!("line {}: bad number `{v}`", lineno + 1))
        };
        match key {
            "newton_tol" => config.newton_tol = parse_f64(value)?,
            "max_newton_iters" => {
                config.max_newton_iters = value
                    .parse()
                    .map_err(|_| format!("line {}: bad integer `{value}`", lineno + 1))?
            }
            "initial_step" => config.initial_step = parse_f64(value)?,
            "min_step" => config.min_step = parse_f64(value)?,
            "max_step" => config.max_step = parse_f64(value)?,
            "max_points" => {
                config.max_points = value
                    .parse()
                    .map_err(|_| format!("line {}: bad integer `{value}`", lineno + 1))?
            }
            "omega_min" => config.omega_min = parse_f64(value)?,
            "omega_max" => config.omega_max = parse_f64(value)?,
            "switch_offset" => config.switch_offset = parse_f64(value)?,
            other => return Err(format!("line {}: unknown key `{other}`", lineno + 1)),
        }
    }
    if config.min_step > config.initial_step || config.initial_step > config.max_step {
        return Err("step sizes must satisfy min_step <= initial_step <= max_step".into());
    }
    Ok(())
}
