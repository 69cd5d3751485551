//! Residual sweep over part of the catalog, at default parameters and a
//! few random draws.

use legendre::verify::{verify_all, Filter, Status, VerifyConfig};

fn main() -> legendre::Result<()> {
    let filter = Filter::parse("part=c")?;
    let cfg = VerifyConfig { n_points: 300, ..VerifyConfig::default() };
    let reports = verify_all(&filter, &cfg);
    for r in &reports {
        println!("{:<14} {:?}  residual {:.1e}  m-domain {}", r.entry_id, r.status, r.max_abs_residual, r.m_domain_stored);
    }
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    println!("{passed} of {} passed", reports.len());
    Ok(())
}
