//! Sign of `Re σ` on the figure grids. Passivity is not a stated property of
//! the collisional quantum model, so this reports the minimum instead of
//! asserting it; only finiteness is required.

use plasma_response::cli::figure;
use plasma_response::response::Model;

#[test]
fn real_conductivity_sign_on_figure_grids() {
    for n in [1, 3, 4] {
        let preset = figure::preset(n, None, figure::DEFAULT_POINTS).unwrap();
        let records: Vec<_> = preset.blocks.iter().flat_map(|(_, s)| s.run().0).collect();
        for model in Model::ALL {
            let re: Vec<f64> = records
                .iter()
                .filter(|r| r.model == model)
                .map(|r| r.sigma.expect("figure point evaluates").re)
                .collect();
            if re.is_empty() {
                continue;
            }
            assert!(re.iter().all(|v| v.is_finite()));
            let min = re.iter().copied().fold(f64::INFINITY, f64::min);
            let negative = re.iter().filter(|&&v| v < 0.0).count();
            println!(
                "figure {n} {model}: min Re σ/σ₀ = {min:.6e}, {negative}/{} points negative",
                re.len()
            );
        }
    }
}
