//! Central parameter table with the calibrated defaults used by every module.
//!
//! Each field can be overridden from the CLI (`--param KEY=VALUE`) or a
//! config file; the string keys accepted by [`Params::set`] are the field
//! names below.

use thiserror::Error;

use crate::road::Lane;

#[derive(Debug, Error)]
pub enum ParamError {
    #[error("unknown parameter `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for parameter `{key}`: {reason}")]
    InvalidValue {
        key: String,
        value: String,
        reason: String,
    },
}

/// Simulation and controller parameters.
#[derive(Debug, Clone)]
pub struct Params {
    /// Subject replanning period, seconds.
    pub t_upd: f64,
    /// Probability per epoch that a vehicle enters from an on-ramp.
    pub p_on: f64,
    /// Probability per epoch that a vehicle is interested in an off-ramp.
    pub p_off: f64,
    /// Probability that an entering vehicle is not platoon-enabled.
    pub p_npe: f64,
    /// Probability that a qualified vehicle intends to merge at a transition.
    pub p_merge: f64,
    /// Probability that a qualified vehicle intends to change lane.
    pub p_change: f64,
    /// Minimum time gap between successive vehicles not in a platoon, seconds.
    pub t_p: f64,
    /// Time gap between successive vehicles in a platoon, seconds.
    pub t_g: f64,
    /// Surrounding-vehicle lane change completion time, seconds.
    pub t_lcp: f64,
    /// Minimum interval between lane changes of successive vehicles, seconds.
    pub t_lc: f64,
    /// Surrounding-traffic update step / reaction delay, seconds.
    pub tau_s: f64,
    /// Planner prediction horizon, seconds.
    pub horizon: f64,
    /// Speed at maximum flow, left lane, m/s.
    pub v_m_left: f64,
    /// Speed at maximum flow, right lane, m/s.
    pub v_m_right: f64,
    /// Maximum speed, left lane, m/s.
    pub v_max_left: f64,
    /// Maximum speed, right lane, m/s.
    pub v_max_right: f64,
    /// Subject maximum acceleration magnitude, m/s^2.
    pub a_max: f64,
    /// Subject maximum jerk magnitude, m/s^3.
    pub j_max: f64,
    /// Critical gap for surrounding lane changes, meters.
    pub d_cg: f64,
    /// Vehicle length, meters.
    pub l_car: f64,
    /// Standstill headway, meters.
    pub h_st: f64,
    /// IDM maximum desired acceleration, m/s^2.
    pub idm_a: f64,
    /// IDM comfortable deceleration, m/s^2.
    pub idm_b: f64,
    /// IDM acceleration exponent.
    pub idm_delta: f64,
    /// Physical deceleration limit for surrounding vehicles, m/s^2.
    pub max_decel: f64,
    /// Air resistance coefficient.
    pub gamma_ar: f64,
    /// Rolling resistance coefficient.
    pub gamma_rr: f64,
    /// Grade resistance coefficient.
    pub gamma_gr: f64,
    /// Inertia resistance coefficient.
    pub gamma_ir: f64,
    /// Fuel cost per joule, dollars.
    pub eta_f: f64,
    /// Fuel coefficient for a free agent.
    pub beta_free: f64,
    /// Fuel coefficient for a platoon member.
    pub beta_platoon: f64,
    /// Fuel coefficient during merge/split transitions.
    pub beta_transition: f64,
    /// Scheduled splitting levels, road pieces.
    pub sched_levels: [u32; 3],
    /// Mean of the splitting-schedule normal, left lane.
    pub mu_sched_left: f64,
    /// Mean of the splitting-schedule normal, right lane.
    pub mu_sched_right: f64,
    /// Standard deviation of the splitting-schedule normal.
    pub sigma_sched: f64,
    /// Lane width, meters.
    pub lane_width: f64,
    /// Warm-up placement noise standard deviation, meters.
    pub sigma_pos: f64,
    /// Warm-up duration, seconds.
    pub warmup_duration: f64,
    /// Planner gap margin over the free-agent bound, meters.
    pub delta_safe: f64,
    /// Planner gap margin over the platoon bound, meters.
    pub delta_platoon: f64,
    /// Continuation lookahead distance used to rank plan candidates, meters.
    pub d_cont: f64,
    /// End-speed grid step for plan candidates, m/s.
    pub grid_speed_step: f64,
    /// Feasibility sampling step, seconds.
    pub sample_dt: f64,
    /// Quadrature step for segment fuel cost, seconds.
    pub quad_dt: f64,
    /// Bound tolerance for constraint checks.
    pub bound_tol: f64,
    /// Upstream vehicles sampled per lane for surrounding-cost reporting.
    pub n_upstream_per_lane: usize,
    /// Hard cap on simulated trip time, seconds.
    pub max_sim_time: f64,
    /// Wall-clock budget multiple treated as a fatal planner overrun.
    pub budget_multiple: f64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            t_upd: 0.4,
            p_on: 0.6,
            p_off: 0.6,
            p_npe: 0.5,
            p_merge: 0.6,
            p_change: 0.1,
            t_p: 3.5,
            t_g: 0.55,
            t_lcp: 3.6,
            t_lc: 5.0,
            tau_s: 0.4,
            horizon: 10.0,
            v_m_left: 20.0,
            v_m_right: 14.0,
            v_max_left: 30.0,
            v_max_right: 20.0,
            a_max: 2.0,
            j_max: 3.5,
            d_cg: 50.0,
            l_car: 5.0,
            h_st: 5.0,
            idm_a: 2.0,
            idm_b: 3.0,
            idm_delta: 4.0,
            max_decel: 6.0,
            gamma_ar: 0.3987,
            gamma_rr: 281.547,
            gamma_gr: 0.0,
            gamma_ir: 1750.0,
            eta_f: 5.98e-8,
            beta_free: 1.0,
            beta_platoon: 0.9,
            beta_transition: 0.95,
            sched_levels: [2, 10, 50],
            mu_sched_left: 2.0,
            mu_sched_right: -1.0,
            sigma_sched: 5.0,
            lane_width: 3.6,
            sigma_pos: 2.0,
            warmup_duration: 120.0,
            delta_safe: 4.0,
            delta_platoon: 2.0,
            d_cont: 3000.0,
            grid_speed_step: 2.0,
            sample_dt: 0.1,
            quad_dt: 0.01,
            bound_tol: 1e-6,
            n_upstream_per_lane: 15,
            max_sim_time: 7200.0,
            budget_multiple: 25.0,
        }
    }
}

impl Params {
    pub fn v_m(&self, lane: Lane) -> f64 {
        match lane {
            Lane::Left => self.v_m_left,
            Lane::Right => self.v_m_right,
        }
    }

    pub fn v_max(&self, lane: Lane) -> f64 {
        match lane {
            Lane::Left => self.v_max_left,
            Lane::Right => self.v_max_right,
        }
    }

    pub fn mu_sched(&self, lane: Lane) -> f64 {
        match lane {
            Lane::Left => self.mu_sched_left,
            Lane::Right => self.mu_sched_right,
        }
    }

    /// Lane center lateral coordinate; the right lane is y = 0.
    pub fn lane_center(&self, lane: Lane) -> f64 {
        match lane {
            Lane::Left => self.lane_width,
            Lane::Right => 0.0,
        }
    }

    /// Capacity density 1/(t_p * v_m), vehicles per meter.
    pub fn capacity_density(&self, lane: Lane) -> f64 {
        1.0 / (self.t_p * self.v_m(lane))
    }

    /// Jam density 1/(l_car + h_st), vehicles per meter.
    pub fn jam_density(&self) -> f64 {
        1.0 / (self.l_car + self.h_st)
    }

    /// Sets a parameter by its field name.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ParamError> {
        let bad = |reason: &str| ParamError::InvalidValue {
            key: key.to_string(),
            value: value.to_string(),
            reason: reason.to_string(),
        };
        macro_rules! f64_field {
            ($field:ident) => {{
                self.$field = value.parse::<f64>().map_err(|e| bad(&e.to_string()))?;
                Ok(())
            }};
        }
        match key {
            "t_upd" => f64_field!(t_upd),
            "p_on" => f64_field!(p_on),
            "p_off" => f64_field!(p_off),
            "p_npe" => f64_field!(p_npe),
            "p_merge" => f64_field!(p_merge),
            "p_change" => f64_field!(p_change),
            "t_p" => f64_field!(t_p),
            "t_g" => f64_field!(t_g),
            "t_lcp" => f64_field!(t_lcp),
            "t_lc" => f64_field!(t_lc),
            "tau_s" => f64_field!(tau_s),
            "horizon" => f64_field!(horizon),
            "v_m_left" => f64_field!(v_m_left),
            "v_m_right" => f64_field!(v_m_right),
            "v_max_left" => f64_field!(v_max_left),
            "v_max_right" => f64_field!(v_max_right),
            "a_max" => f64_field!(a_max),
            "j_max" => f64_field!(j_max),
            "d_cg" => f64_field!(d_cg),
            "l_car" => f64_field!(l_car),
            "h_st" => f64_field!(h_st),
            "idm_a" => f64_field!(idm_a),
            "idm_b" => f64_field!(idm_b),
            "idm_delta" => f64_field!(idm_delta),
            "max_decel" => f64_field!(max_decel),
            "gamma_ar" => f64_field!(gamma_ar),
            "gamma_rr" => f64_field!(gamma_rr),
            "gamma_gr" => f64_field!(gamma_gr),
            "gamma_ir" => f64_field!(gamma_ir),
            "eta_f" => f64_field!(eta_f),
            "beta_free" => f64_field!(beta_free),
            "beta_platoon" => f64_field!(beta_platoon),
            "beta_transition" => f64_field!(beta_transition),
            "mu_sched_left" => f64_field!(mu_sched_left),
            "mu_sched_right" => f64_field!(mu_sched_right),
            "sigma_sched" => f64_field!(sigma_sched),
            "lane_width" => f64_field!(lane_width),
            "sigma_pos" => f64_field!(sigma_pos),
            "warmup_duration" => f64_field!(warmup_duration),
            "delta_safe" => f64_field!(delta_safe),
            "delta_platoon" => f64_field!(delta_platoon),
            "d_cont" => f64_field!(d_cont),
            "grid_speed_step" => f64_field!(grid_speed_step),
            "sample_dt" => f64_field!(sample_dt),
            "quad_dt" => f64_field!(quad_dt),
            "bound_tol" => f64_field!(bound_tol),
            "max_sim_time" => f64_field!(max_sim_time),
            "budget_multiple" => f64_field!(budget_multiple),
            "n_upstream_per_lane" => {
                self.n_upstream_per_lane =
                    value.parse::<usize>().map_err(|e| bad(&e.to_string()))?;
                Ok(())
            }
            "sched_levels" => {
                let mut levels = [0u32; 3];
                let parts: Vec<&str> = value.split(',').collect();
                if parts.len() != 3 {
                    return Err(bad("expected three comma-separated levels"));
                }
                for (slot, part) in levels.iter_mut().zip(parts) {
                    *slot = part.trim().parse::<u32>().map_err(|e| bad(&e.to_string()))?;
                }
                if !(levels[0] < levels[1] && levels[1] < levels[2]) {
                    return Err(bad("levels must be ascending"));
                }
                self.sched_levels = levels;
                Ok(())
            }
            _ => Err(ParamError::UnknownKey(key.to_string())),
        }
    }
}
