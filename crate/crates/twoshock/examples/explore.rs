// Scratch: sweep bump variants of the default scenario (to be replaced).
use twoshock::diagnostics::{decay_fit, entropy_decay_fraction, LedgerContext};
use twoshock::recorder::RunRecorder;
use twoshock::riemann::hugoniot_velocity;
use twoshock::shifts::{ShiftConstants, ShiftEngine, ShiftQuadrature, WeightSpec};
use twoshock::solver::{BaseWave, FieldTarget};
use twoshock::*;

fn main() {
    let p = FluidParams::gamma_law(2.0, 0.1, 0.0).unwrap();
    let left = EndState::new(1.0, 0.0);
    let u_m = hugoniot_velocity(Family::One, left, 0.9, &p);
    let dp = p.pressure(0.9) - 1.0;
    let right = EndState::new(1.0, u_m - (dp * 0.1).sqrt());
    let cfg = solve_intermediate_state(left, right, &p).unwrap();
    let w1 = solve_profile(Family::One, &cfg, &p, 40.0, 8001).unwrap();
    let w2 = solve_profile(Family::Two, &cfg, &p, 40.0, 8001).unwrap();
    let cw = CompositeWave::new(w1, w2).unwrap();

    // instrument floor for the interaction series: the tabulated slopes
    // plateau near machine epsilon, so products below this are noise
    let ode1 = cw.wave1().ode();
    let ode2 = cw.wave2().ode();
    let c1 = ode1.rhs(cw.wave1().v_tab()[cw.wave1().len() - 1]).abs();
    let c1b = ode1.rhs(cw.wave1().v_tab()[0]).abs();
    let c2 = ode2.rhs(cw.wave2().v_tab()[0]).abs();
    let c2b = ode2.rhs(cw.wave2().v_tab()[cw.wave2().len() - 1]).abs();
    let jump1 = (cw.wave1().left().v - cw.wave1().right().v).abs();
    let jump2 = (cw.wave2().left().v - cw.wave2().right().v).abs();
    let floor = 10.0 * (c1.max(c1b) * jump2 + c2.max(c2b) * jump1);
    println!("interaction instrument floor = {floor:.3e}");

    let variants = [
        ("center5_w2.0_v", 5.0, 2.0, FieldTarget::V),
        ("center0_w1.5_v", 0.0, 1.5, FieldTarget::V),
        ("center5_w1.2_v", 5.0, 1.2, FieldTarget::V),
        ("center3_w1.5_u1", 3.0, 1.5, FieldTarget::U1),
    ];
    for (name, center, width, target) in variants {
        let t0 = std::time::Instant::now();
        let grid = Grid::new_1d(-48.0, 40.0, 2200).unwrap();
        let scfg = SolverConfig::new(p, grid, left, right);
        let mut solver = Solver::new(scfg).unwrap();
        let bump = Bump {
            target,
            center,
            width,
            amplitude: 0.02,
            mode2: 0,
            mode3: 0,
        };
        let (state0, _) =
            make_initial_data(&BaseWave::Composite(&cw), &[bump], &grid, 1).unwrap();
        let weights = WeightSpec::defaults(cw.wave1().delta(), cw.wave2().delta());
        let constants = ShiftConstants::standard(&p, cw.mid().v);
        let quad = ShiftQuadrature::new(&cw, &grid, weights, constants, 0.0).unwrap();
        let engine = ShiftEngine::new(quad, constants);
        let ledger_ctx = LedgerContext {
            wave: &cw,
            grid: &grid,
            weights,
            frame_speed: 0.0,
            threads: 1,
        };
        let mut rec = RunRecorder::new(engine, ledger_ctx, 1);
        rec.record_initial(&state0);
        let rc = RunConfig {
            t_end: 20.0,
            output_interval: 0.0,
            fixed_dt: None,
            max_steps: 10_000_000,
        };
        run(&mut solver, state0, &rc, Some(&mut rec)).unwrap();
        let rows = &rec.rows;
        let first = rows.first().unwrap();
        let last = rows.last().unwrap();
        let eng = &rec.engine;
        let term_ratio = eng.state.xdot1.abs().max(eng.state.xdot2.abs()) / eng.max_xdot;
        // filtered interaction fit
        let mut ts = Vec::new();
        let mut ys = Vec::new();
        for r in rows.iter() {
            if r.t >= 1.0 && r.t <= 20.0 && r.interaction_12 > floor {
                ts.push(r.t);
                ys.push(r.interaction_12);
            }
        }
        let fit_i = twoshock::stats::log_linear_fit(&ts, &ys, 0.0).unwrap();
        let fit_i_raw = decay_fit(rows, 1.0, 20.0, |r| r.interaction_12).unwrap();
        let fit_t = decay_fit(rows, 1.0, 20.0, |r| r.phi2_tail1).unwrap();
        println!(
            "{name}: E {:.3e}->{:.3e} frac {:.4} sup {:.3e}->{:.3e} (ratio {:.3}) maxXd {:.3e} termXd {:.3e} ratio {:.3} | inter slope {:.3} r2 {:.4} (raw r2 {:.3}, n={}) tail r2 {:.4} | wall {:.1}s",
            first.e_weighted,
            last.e_weighted,
            entropy_decay_fraction(rows, 1.0, 1e-6),
            first.sup_v_dev.max(first.sup_u_dev),
            last.sup_v_dev.max(last.sup_u_dev),
            (last.sup_v_dev.max(last.sup_u_dev)) / (first.sup_v_dev.max(first.sup_u_dev)),
            eng.max_xdot,
            eng.state.xdot1.abs().max(eng.state.xdot2.abs()),
            term_ratio,
            fit_i.slope,
            fit_i.r2,
            fit_i_raw.r2,
            fit_i.n,
            fit_t.r2,
            t0.elapsed().as_secs_f64()
        );
    }
}
