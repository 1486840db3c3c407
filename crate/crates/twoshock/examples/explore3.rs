// Scratch: tail scaling, poincare probe suite, relative-quantity box (to be replaced).
use twoshock::diagnostics::{relative_pressure, relative_q};
use twoshock::poincare::{poincare_check, SlabFn};
use twoshock::probes::{poincare_probe, rng_for};
use twoshock::riemann::hugoniot_velocity;
use twoshock::*;

fn main() {
    let t0 = std::time::Instant::now();
    // tail scaling across strengths
    let p = FluidParams::gamma_law(2.0, 0.1, 0.0).unwrap();
    for family in [Family::One, Family::Two] {
        let mut per_delta = Vec::new();
        for delta in [0.05f64, 0.1, 0.2] {
            // anchor the upstream state at v = 1 and pick the downstream
            // volume to make the pressure jump exactly delta
            let (left_v, right_v) = match family {
                Family::One => (1.0, (1.0 + delta).powf(-0.5)),
                Family::Two => ((1.0 + delta).powf(-0.5), 1.0),
            };
            let (lu, ru);
            match family {
                Family::One => {
                    let l = EndState::new(left_v, 0.0);
                    let u = hugoniot_velocity(Family::One, l, right_v, &p);
                    lu = l;
                    ru = EndState::new(right_v, u);
                }
                Family::Two => {
                    let r = EndState::new(right_v, 0.0);
                    // upstream of a 2-shock: v smaller, u larger
                    let dpj = p.pressure(left_v) - p.pressure(right_v);
                    let u = (dpj * (right_v - left_v)).sqrt();
                    lu = EndState::new(left_v, u);
                    ru = r;
                }
            }
            let ode_rate = {
                let prof = profile::solve_profile_between(family, lu, ru, &p, 2.0, 33);
                // just to get rates without a long table, rebuild below
                drop(prof);
            };
            let _ = ode_rate;
            // build with ~16 e-foldings of the slower tail
            let tmp = profile::solve_profile_between(family, lu, ru, &p, 200.0, 4001);
            let prof = match tmp {
                Ok(pr) => pr,
                Err(e) => {
                    println!("halfwidth probe failed: {e}");
                    continue;
                }
            };
            let (rl, rr) = prof.tail_rates();
            let hw = 18.5 / rl.min(rr);
            let n = profile::default_n_points(hw, rl.max(rr)).min(40001);
            let prof =
                profile::solve_profile_between(family, lu, ru, &p, hw, n).unwrap();
            let rep = certify_tail_bounds(&prof).unwrap();
            println!(
                "family {family} delta {delta}: rate_l {:.4} (an {:.4}, r2 {:.5}) rate_r {:.4} (an {:.4}) rate/delta l {:.3} r {:.3} c_ratio {:.5} d2 {:.3} d3 {:.3} xi_max {:.3} mono {}",
                rep.left.rate,
                rep.left.analytic_rate,
                rep.left.r2,
                rep.right.rate,
                rep.right.analytic_rate,
                rep.left.rate_per_delta,
                rep.right.rate_per_delta,
                rep.c_ratio,
                rep.sup_d2_ratio,
                rep.sup_d3_ratio,
                rep.xi_at_max_slope,
                rep.monotone_decay
            );
            per_delta.push((rep.left.rate_per_delta, rep.right.rate_per_delta));
            // grid stability of c_ratio
            let prof2 =
                profile::solve_profile_between(family, lu, ru, &p, hw, 2 * n + 1).unwrap();
            let rep2 = certify_tail_bounds(&prof2).unwrap();
            let rel = (rep2.c_ratio - rep.c_ratio).abs() / rep.c_ratio;
            println!("   c_ratio refinement change: {rel:.2e}");
        }
        for side in 0..2 {
            let vals: Vec<f64> = per_delta
                .iter()
                .map(|x| if side == 0 { x.0 } else { x.1 })
                .collect();
            let spread = vals.iter().cloned().fold(f64::MIN, f64::max)
                / vals.iter().cloned().fold(f64::MAX, f64::min);
            println!("family {family} side {side}: rate/delta spread factor {spread:.4}");
        }
    }
    println!("tails took {:?}", t0.elapsed());

    // poincare probes
    let t1 = std::time::Instant::now();
    let mut rng = rng_for(7);
    let mut worst = f64::INFINITY;
    let mut fails = 0;
    for i in 0..200 {
        let f = poincare_probe(&mut rng);
        let c = poincare_check(&f).unwrap_or_else(|e| panic!("probe {i}: {e}"));
        let rel = c.slack / (1.0 + c.rhs);
        worst = worst.min(rel);
        if c.slack < -1e-10 * (1.0 + c.rhs) {
            fails += 1;
        }
    }
    println!(
        "poincare: 200 probes, worst rel slack {worst:.3e}, fails {fails}, took {:?}",
        t1.elapsed()
    );
    let eq = SlabFn::from_fn(257, 1, 1, |y, _, _| y);
    let c = poincare_check(&eq).unwrap();
    println!("equality case: lhs {:.15} rhs {:.15}", c.lhs, c.rhs);

    // relative-quantity box
    let t2 = std::time::Instant::now();
    let box_v = probes::volume_box(200, 0.5, 3.0);
    let box_w = probes::volume_box(200, 0.5, 2.0);
    let mut c_q: f64 = 0.0;
    let mut c_p: f64 = 0.0;
    for &v in &box_v {
        for &w in &box_w {
            let q = relative_q(&p, v, w);
            let pp = relative_pressure(&p, v, w);
            if v != w {
                c_q = c_q.max((v - w) * (v - w) / q);
                c_p = c_p.max((v - w) * (v - w) / pp);
            }
            assert!(q >= 0.0 && pp >= 0.0);
        }
    }
    println!("est-rel-1 measured constants: C_Q {c_q:.3} C_p {c_p:.3}");
    // lipschitz |p(v)-p(w)| <= C|v-w| on v,w > 1/2
    let mut c_l: f64 = 0.0;
    for &v in &box_v {
        for &w in &box_v {
            if v != w {
                c_l = c_l.max((p.pressure(v) - p.pressure(w)).abs() / (v - w).abs());
            }
        }
    }
    println!("est-rel-2 measured constant: {c_l:.3}");
    // envelopes in a pressure window |p(v)-p(w)| < 0.05 around w near 1
    let mut viol = 0usize;
    let mut c_up_p: f64 = 0.0;
    let mut c_up_q: f64 = 0.0;
    let gamma = 2.0;
    for &w in &probes::volume_box(200, 0.8, 1.2) {
        let pw = p.pressure(w);
        for k in 0..200 {
            let dp = -0.05 + 0.1 * (k as f64 + 0.5) / 200.0;
            let pv = pw + dp;
            if pv <= 0.0 {
                continue;
            }
            let v = pv.powf(-1.0 / gamma);
            let q = relative_q(&p, v, w);
            let low = pw.powf(-1.0 / gamma - 1.0) / (2.0 * gamma) * dp * dp
                - (1.0 + gamma) / (3.0 * gamma * gamma) * pw.powf(-1.0 / gamma - 2.0) * dp.powi(3);
            if q < low {
                viol += 1;
            }
            // implied slack constants for the upper envelopes
            let quad_p = (gamma + 1.0) / (2.0 * gamma * pw) * dp * dp;
            let quad_q = pw.powf(-1.0 / gamma - 1.0) / (2.0 * gamma) * dp * dp;
            if dp != 0.0 {
                c_up_p = c_up_p.max((relative_pressure(&p, v, w) - quad_p) / (dp.abs() * dp * dp));
                c_up_q = c_up_q.max((q - quad_q) / (dp.abs() * dp * dp));
            }
        }
    }
    println!(
        "est-rel-3: lower-envelope violations {viol}; upper slack constants C_p {c_up_p:.3} C_q {c_up_q:.3}; took {:?}",
        t2.elapsed()
    );
}
