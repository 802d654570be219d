use std::fmt::Write;

use crate::config::Params;
use crate::error::CliError;

/// Every derived constant of a configuration, one `name = value` per line.
pub fn explain(p: &Params) -> Result<String, CliError> {
    let link = p.link()?;
    let v = &link.vlc;
    let cfg = p.vlc();
    let mut s = String::new();
    let mut line = |name: &str, val: f64| writeln!(s, "{name:<18} = {val:.10e}").unwrap();
    line("w", v.w);
    line("r_w_m", v.r_w);
    line("g_concentrator", v.g);
    line("X", v.x_const);
    line("sigma2", v.sigma_d2);
    line("mu_vlc", v.mu_vlc);
    line("P_t_w", cfg.total_power());
    line("gamma_min", v.gamma_min);
    line("gamma_max", v.gamma_max);
    line("mu_rf", link.rf.cfg.mu_rf);
    line("C", link.c);
    line("D", link.rf.high_snr_d());
    line("rf_terms", link.rf.terms.len() as f64);
    for w in &v.warnings {
        writeln!(s, "warning: {w}").unwrap();
    }
    Ok(s)
}
