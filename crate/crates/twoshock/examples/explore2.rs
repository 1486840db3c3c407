// Scratch: single-shock drift order study + rhs residual order (to be replaced).
use twoshock::riemann::hugoniot_velocity;
use twoshock::solver::BaseWave;
use twoshock::*;

fn main() {
    let p = FluidParams::gamma_law(2.0, 0.1, 0.0).unwrap();
    let left = EndState::new(1.0, 0.0);
    let v_m = 0.9;
    let u_m = hugoniot_velocity(Family::One, left, v_m, &p);
    let right = EndState::new(v_m, u_m);
    let prof = profile::solve_profile_between(Family::One, left, right, &p, 40.0, 16001).unwrap();
    let sigma = prof.sigma();
    println!("sigma1 = {sigma}");

    // rhs applied to the exact profile vs the translation generator
    for n1 in [1000usize, 2000, 4000] {
        let grid = Grid::new_1d(-40.0, 40.0, n1).unwrap();
        let mut cfgs = SolverConfig::new(p, grid, left, right);
        cfgs.sponge.fraction = 0.10;
        let mut solver = Solver::new(cfgs).unwrap();
        let (state, _) = make_initial_data(&BaseWave::Single(&prof), &[], &grid, 1).unwrap();
        let deriv = solver.rhs(&state);
        // interior L2 of (rhs + sigma * exact d/dx)
        let mut sq = 0.0;
        let mut cnt = 0usize;
        for i in 0..n1 {
            let x = grid.x1(i);
            if x.abs() < 30.0 {
                let rv = deriv.dv[i] + sigma * prof.dv(x);
                let ru = deriv.du[0][i] + sigma * (-prof.sigma_star() * prof.dv(x));
                sq += (rv * rv + ru * ru) * grid.dx1;
                cnt += 1;
            }
        }
        println!("n1={n1}: rhs residual L2 = {:.4e} ({} pts)", sq.sqrt(), cnt);
    }

    // drift study at T = 5
    let t_end = 5.0;
    let mut errs = Vec::new();
    for n1 in [2000usize, 4000] {
        let t0 = std::time::Instant::now();
        let grid = Grid::new_1d(-40.0, 40.0, n1).unwrap();
        let cfgs = SolverConfig::new(p, grid, left, right);
        let mut solver = Solver::new(cfgs).unwrap();
        let (state0, _) = make_initial_data(&BaseWave::Single(&prof), &[], &grid, 1).unwrap();
        let rc = RunConfig::to_time(t_end);
        let traj = run(&mut solver, state0, &rc, None).unwrap();
        let fin = traj.final_state();
        let mut sq = 0.0;
        for i in 0..n1 {
            let x = grid.x1(i);
            if x.abs() < 30.0 {
                let dv = fin.v[i] - prof.v(x - sigma * t_end);
                let du = fin.u[0][i] - prof.u(x - sigma * t_end);
                sq += (dv * dv + du * du) * grid.dx1;
            }
        }
        let err = sq.sqrt();
        errs.push(err);
        println!(
            "n1={n1}: drift L2 = {:.5e}, steps {}, wall {:.1}s",
            err,
            traj.steps,
            t0.elapsed().as_secs_f64()
        );
    }
    println!("order = {:.3}", (errs[0] / errs[1]).log2());

    // temporal order via fixed-dt Richardson at T = 1 on n1 = 1000
    let grid = Grid::new_1d(-40.0, 40.0, 1000).unwrap();
    let base_dt = 2.0e-3;
    let mut sol_at = |dt: f64| {
        let cfgs = SolverConfig::new(p, grid, left, right);
        let mut solver = Solver::new(cfgs).unwrap();
        let (state0, _) = make_initial_data(&BaseWave::Single(&prof), &[], &grid, 1).unwrap();
        let rc = RunConfig {
            t_end: 1.0,
            output_interval: 0.0,
            fixed_dt: Some(dt),
            max_steps: 10_000_000,
        };
        run(&mut solver, state0, &rc, None).unwrap().final_state().clone()
    };
    let a = sol_at(base_dt);
    let b = sol_at(base_dt / 2.0);
    let c = sol_at(base_dt / 4.0);
    let l2diff = |x: &FlowState, y: &FlowState| -> f64 {
        let mut sq = 0.0;
        for i in 0..grid.n1 {
            let dv = x.v[i] - y.v[i];
            let du = x.u[0][i] - y.u[0][i];
            sq += (dv * dv + du * du) * grid.dx1;
        }
        sq.sqrt()
    };
    let e1 = l2diff(&a, &b);
    let e2 = l2diff(&b, &c);
    println!(
        "temporal: |dt - dt/2| = {:.3e}, |dt/2 - dt/4| = {:.3e}, order = {:.2}",
        e1,
        e2,
        (e1 / e2).log2()
    );
}
