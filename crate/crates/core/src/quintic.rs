//! Quintic polynomial motion segments: boundary-value solving, evaluation,
//! and sampled constraint checking for the subject vehicle's plans.
//!
//! Each sub-action is one segment per axis. Matching position, velocity and
//! acceleration at both ends gives six conditions, so the degree-5
//! polynomial is determined in closed form. Constraint checking samples the
//! trajectory on a uniform grid; quintic extrema have no closed form, so a
//! sampling check with an explicit bound tolerance is used instead of root
//! isolation.

use std::fmt::Write as _;

use thiserror::Error;

use crate::maneuver::SubAction;
use crate::road::{Lane, PerLane};
use crate::world::LeaderPrediction;

/// Endpoint residual accepted when validating solved segments and junction
/// continuity.
pub const SOLVER_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum QuinticError {
    #[error("segment duration must be positive, got {0}")]
    NonPositiveDuration(f64),
    #[error("time {t} outside segment window [{start}, {end}]")]
    OutsideWindow { t: f64, start: f64, end: f64 },
    #[error("segments are not contiguous at index {index}: gap {gap}")]
    NotContiguous { index: usize, gap: f64 },
    #[error("trajectory breaks C2 continuity at index {index} ({what}, mismatch {mismatch})")]
    Discontinuous {
        index: usize,
        what: &'static str,
        mismatch: f64,
    },
    #[error("trajectory has no segments")]
    Empty,
}

/// Position/velocity/acceleration on both axes at a segment endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoundaryState {
    pub x: f64,
    pub vx: f64,
    pub ax: f64,
    pub y: f64,
    pub vy: f64,
    pub ay: f64,
}

/// Sampled kinematics with exact polynomial derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicSample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
    pub ax: f64,
    pub ay: f64,
    pub jx: f64,
    pub jy: f64,
}

impl KinematicSample {
    pub fn boundary(&self) -> BoundaryState {
        BoundaryState {
            x: self.x,
            vx: self.vx,
            ax: self.ax,
            y: self.y,
            vy: self.vy,
            ay: self.ay,
        }
    }
}

/// Which minimum time gap applies while a segment executes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapMode {
    /// Free-agent gap `t_p` to the leader.
    Free,
    /// Platoon gap `t_g` (merging, following, or splitting).
    Platoon,
}

/// One quintic segment per axis over `[t_start, t_start + duration]`.
///
/// Coefficients are in local time relative to `t_start`, constant term first.
#[derive(Debug, Clone, PartialEq)]
pub struct QuinticSegment {
    pub coeffs_x: [f64; 6],
    pub coeffs_y: [f64; 6],
    pub t_start: f64,
    pub duration: f64,
    pub sub_action: SubAction,
    pub gap_mode: GapMode,
}

fn solve_axis(p0: f64, v0: f64, a0: f64, p1: f64, v1: f64, a1: f64, t: f64) -> [f64; 6] {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let c3 = (20.0 * (p1 - p0) - (8.0 * v1 + 12.0 * v0) * t - (3.0 * a0 - a1) * t2) / (2.0 * t3);
    let c4 = (30.0 * (p0 - p1) + (14.0 * v1 + 16.0 * v0) * t + (3.0 * a0 - 2.0 * a1) * t2)
        / (2.0 * t4);
    let c5 = (12.0 * (p1 - p0) - 6.0 * (v1 + v0) * t + (a1 - a0) * t2) / (2.0 * t5);
    [p0, v0, 0.5 * a0, c3, c4, c5]
}

fn eval_axis(c: &[f64; 6], tau: f64) -> (f64, f64, f64, f64) {
    let p = ((((c[5] * tau + c[4]) * tau + c[3]) * tau + c[2]) * tau + c[1]) * tau + c[0];
    let v = (((5.0 * c[5] * tau + 4.0 * c[4]) * tau + 3.0 * c[3]) * tau + 2.0 * c[2]) * tau + c[1];
    let a = ((20.0 * c[5] * tau + 12.0 * c[4]) * tau + 6.0 * c[3]) * tau + 2.0 * c[2];
    let j = (60.0 * c[5] * tau + 24.0 * c[4]) * tau + 6.0 * c[3];
    (p, v, a, j)
}

/// Solves the unique quintic matching both boundary states.
pub fn solve_segment(
    start: &BoundaryState,
    end: &BoundaryState,
    duration: f64,
    t_start: f64,
    sub_action: SubAction,
) -> Result<QuinticSegment, QuinticError> {
    if !(duration > 0.0) {
        return Err(QuinticError::NonPositiveDuration(duration));
    }
    Ok(QuinticSegment {
        coeffs_x: solve_axis(start.x, start.vx, start.ax, end.x, end.vx, end.ax, duration),
        coeffs_y: solve_axis(start.y, start.vy, start.ay, end.y, end.vy, end.ay, duration),
        t_start,
        duration,
        sub_action,
        gap_mode: GapMode::Free,
    })
}

impl QuinticSegment {
    /// A constant-acceleration profile expressed as a (degenerate) quintic;
    /// used for fallback slices and constant-speed extensions.
    pub fn constant_accel(
        start: &BoundaryState,
        accel: f64,
        duration: f64,
        t_start: f64,
        sub_action: SubAction,
    ) -> Result<Self, QuinticError> {
        if !(duration > 0.0) {
            return Err(QuinticError::NonPositiveDuration(duration));
        }
        Ok(QuinticSegment {
            coeffs_x: [start.x, start.vx, 0.5 * accel, 0.0, 0.0, 0.0],
            coeffs_y: [start.y, 0.0, 0.0, 0.0, 0.0, 0.0],
            t_start,
            duration,
            sub_action,
            gap_mode: GapMode::Free,
        })
    }

    pub fn t_end(&self) -> f64 {
        self.t_start + self.duration
    }

    /// Kinematics at global time `t`; `t` must lie in the segment window
    /// (within the solver tolerance).
    pub fn eval(&self, t: f64) -> Result<KinematicSample, QuinticError> {
        let end = self.t_end();
        if t < self.t_start - SOLVER_TOL || t > end + SOLVER_TOL {
            return Err(QuinticError::OutsideWindow {
                t,
                start: self.t_start,
                end,
            });
        }
        let tau = (t - self.t_start).clamp(0.0, self.duration);
        let (x, vx, ax, jx) = eval_axis(&self.coeffs_x, tau);
        let (y, vy, ay, jy) = eval_axis(&self.coeffs_y, tau);
        Ok(KinematicSample {
            t,
            x,
            y,
            vx,
            vy,
            ax,
            ay,
            jx,
            jy,
        })
    }

    pub fn start_sample(&self) -> KinematicSample {
        self.eval(self.t_start).expect("t_start is in window")
    }

    pub fn end_sample(&self) -> KinematicSample {
        self.eval(self.t_end()).expect("t_end is in window")
    }
}

/// Planner constraint bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanLimits {
    /// Per-lane maximum longitudinal speed, m/s.
    pub v_max: PerLane<f64>,
    pub a_max: f64,
    pub j_max: f64,
    /// Free-agent minimum time gap, seconds.
    pub t_p: f64,
    /// Platoon minimum time gap, seconds.
    pub t_g: f64,
    /// Prediction/plan horizon, seconds.
    pub horizon: f64,
    /// Lane width, meters (right lane center at y = 0).
    pub lane_width: f64,
    /// Tolerance applied to every bound.
    pub tol: f64,
}

impl PlanLimits {
    pub fn min_time_gap(&self, mode: GapMode) -> f64 {
        match mode {
            GapMode::Free => self.t_p,
            GapMode::Platoon => self.t_g,
        }
    }
}

/// A contiguous, C2-continuous sequence of segments.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    segments: Vec<QuinticSegment>,
}

impl Trajectory {
    pub fn new(segments: Vec<QuinticSegment>) -> Result<Self, QuinticError> {
        if segments.is_empty() {
            return Err(QuinticError::Empty);
        }
        for i in 1..segments.len() {
            let prev = &segments[i - 1];
            let next = &segments[i];
            let gap = (next.t_start - prev.t_end()).abs();
            if gap > SOLVER_TOL {
                return Err(QuinticError::NotContiguous { index: i, gap });
            }
            let a = prev.end_sample();
            let b = next.start_sample();
            for (what, d) in [
                ("x", a.x - b.x),
                ("vx", a.vx - b.vx),
                ("ax", a.ax - b.ax),
                ("y", a.y - b.y),
                ("vy", a.vy - b.vy),
                ("ay", a.ay - b.ay),
            ] {
                if d.abs() > SOLVER_TOL {
                    return Err(QuinticError::Discontinuous {
                        index: i,
                        what,
                        mismatch: d.abs(),
                    });
                }
            }
        }
        Ok(Trajectory { segments })
    }

    pub fn segments(&self) -> &[QuinticSegment] {
        &self.segments
    }

    pub fn start_time(&self) -> f64 {
        self.segments[0].t_start
    }

    pub fn end_time(&self) -> f64 {
        self.segments.last().expect("non-empty").t_end()
    }

    pub fn segment_at(&self, t: f64) -> &QuinticSegment {
        let idx = self
            .segments
            .partition_point(|s| s.t_end() < t - SOLVER_TOL)
            .min(self.segments.len() - 1);
        &self.segments[idx]
    }

    pub fn eval(&self, t: f64) -> Result<KinematicSample, QuinticError> {
        self.segment_at(t).eval(t)
    }

    /// Samples `(t, x, y, vx, vy, ax, ay)` rows every `dt` into CSV text.
    pub fn to_csv(&self, dt: f64) -> String {
        use crate::world::fmt9;
        let mut out = String::from("t,x,y,vx,vy,ax,ay\n");
        for s in self.iter_samples(dt) {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                fmt9(s.t),
                fmt9(s.x),
                fmt9(s.y),
                fmt9(s.vx),
                fmt9(s.vy),
                fmt9(s.ax),
                fmt9(s.ay)
            );
        }
        out
    }

    /// Uniform samples over the whole horizon, endpoint included.
    pub fn iter_samples(&self, dt: f64) -> impl Iterator<Item = KinematicSample> + '_ {
        let start = self.start_time();
        let end = self.end_time();
        let n = ((end - start) / dt).round().max(1.0) as usize;
        (0..=n).map(move |k| {
            let t = if k == n { end } else { start + k as f64 * dt };
            self.eval(t).expect("sample inside horizon")
        })
    }
}

/// Constraint kinds reported by [`check_feasibility`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ViolationKind {
    SpeedBelowZero,
    SpeedAboveLane,
    Acceleration,
    Jerk,
    LeaderGap,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub t: f64,
    pub kind: ViolationKind,
    pub value: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub first_violation: Option<Violation>,
}

impl FeasibilityReport {
    fn ok() -> Self {
        FeasibilityReport {
            feasible: true,
            first_violation: None,
        }
    }

    fn violated(v: Violation) -> Self {
        FeasibilityReport {
            feasible: false,
            first_violation: Some(v),
        }
    }
}

/// The lane whose speed cap applies at lateral position `y` (nearer lane
/// center wins).
pub fn lane_for_speed(y: f64, lane_width: f64) -> Lane {
    if y < 0.5 * lane_width {
        Lane::Right
    } else {
        Lane::Left
    }
}

/// Lanes whose leader gaps apply at lateral position `y`: both lanes while
/// strictly between the lane centers, otherwise the occupied lane.
pub fn lanes_for_gap(y: f64, lane_width: f64) -> (Lane, Option<Lane>) {
    let eps = 1e-9;
    if y <= eps {
        (Lane::Right, None)
    } else if y >= lane_width - eps {
        (Lane::Left, None)
    } else {
        (Lane::Right, Some(Lane::Left))
    }
}

/// Samples the trajectory every `dt` and reports the first violation among
/// the speed window, per-lane leader time gaps, and acceleration/jerk bounds.
pub fn check_feasibility(
    traj: &Trajectory,
    limits: &PlanLimits,
    leaders: &LeaderPrediction,
    dt: f64,
) -> FeasibilityReport {
    debug_assert!(dt > 0.0);
    let tol = limits.tol;
    for s in traj.iter_samples(dt) {
        if s.vx < -tol {
            return FeasibilityReport::violated(Violation {
                t: s.t,
                kind: ViolationKind::SpeedBelowZero,
                value: s.vx,
                bound: 0.0,
            });
        }
        let lane = lane_for_speed(s.y, limits.lane_width);
        let cap = *limits.v_max.get(lane);
        if s.vx > cap + tol {
            return FeasibilityReport::violated(Violation {
                t: s.t,
                kind: ViolationKind::SpeedAboveLane,
                value: s.vx,
                bound: cap,
            });
        }
        for a in [s.ax, s.ay] {
            if a.abs() > limits.a_max + tol {
                return FeasibilityReport::violated(Violation {
                    t: s.t,
                    kind: ViolationKind::Acceleration,
                    value: a,
                    bound: limits.a_max,
                });
            }
        }
        for j in [s.jx, s.jy] {
            if j.abs() > limits.j_max + tol {
                return FeasibilityReport::violated(Violation {
                    t: s.t,
                    kind: ViolationKind::Jerk,
                    value: j,
                    bound: limits.j_max,
                });
            }
        }
        let segment = traj.segment_at(s.t);
        let min_gap_time = limits.min_time_gap(segment.gap_mode);
        let (first, second) = lanes_for_gap(s.y, limits.lane_width);
        for lane in std::iter::once(first).chain(second) {
            if let Some(track) = leaders.leader_in(lane) {
                let gap = track.pos_at(s.t - leaders.t0) - track.length - s.x;
                let bound = min_gap_time * s.vx;
                if gap <= bound - tol {
                    return FeasibilityReport::violated(Violation {
                        t: s.t,
                        kind: ViolationKind::LeaderGap,
                        value: gap,
                        bound,
                    });
                }
            }
        }
    }
    FeasibilityReport::ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::{PredictedTrack, TrackRole, VehicleId};
    use approx::assert_abs_diff_eq;

    fn min_jerk_unit() -> QuinticSegment {
        let start = BoundaryState::default();
        let end = BoundaryState {
            x: 1.0,
            ..Default::default()
        };
        solve_segment(&start, &end, 1.0, 0.0, SubAction::Wait).unwrap()
    }

    #[test]
    fn known_min_jerk_coefficients() {
        let seg = min_jerk_unit();
        let expect = [0.0, 0.0, 0.0, 10.0, -15.0, 6.0];
        for (got, want) in seg.coeffs_x.iter().zip(expect) {
            assert_abs_diff_eq!(got, &want, epsilon = 1e-12);
        }
    }

    #[test]
    fn zero_and_constant_speed_cases() {
        let zero = solve_segment(
            &BoundaryState::default(),
            &BoundaryState::default(),
            1.0,
            0.0,
            SubAction::Wait,
        )
        .unwrap();
        assert_eq!(zero.coeffs_x, [0.0; 6]);

        let v = 17.0;
        let t = 4.0;
        let start = BoundaryState {
            vx: v,
            ..Default::default()
        };
        let end = BoundaryState {
            x: v * t,
            vx: v,
            ..Default::default()
        };
        let seg = solve_segment(&start, &end, t, 0.0, SubAction::Wait).unwrap();
        assert_abs_diff_eq!(seg.coeffs_x[1], v, epsilon = 1e-12);
        for &c in &seg.coeffs_x[2..] {
            assert_abs_diff_eq!(c, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn eval_examples() {
        let seg = min_jerk_unit();
        let mid = seg.eval(0.5).unwrap();
        assert_abs_diff_eq!(mid.x, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(mid.vx, 1.875, epsilon = 1e-12);
        let s0 = seg.eval(0.0).unwrap();
        let s1 = seg.eval(1.0).unwrap();
        assert_abs_diff_eq!(s0.x, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s1.x, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s1.vx, 0.0, epsilon = 1e-12);
        assert!(seg.eval(1.5).is_err());
        assert!(seg.eval(-0.5).is_err());
    }

    #[test]
    fn rejects_non_positive_duration() {
        let err = solve_segment(
            &BoundaryState::default(),
            &BoundaryState::default(),
            0.0,
            0.0,
            SubAction::Wait,
        );
        assert!(matches!(err, Err(QuinticError::NonPositiveDuration(_))));
    }

    fn pseudo(seed: &mut u64) -> f64 {
        // xorshift-ish unit uniform for reproducible test boundary conditions
        *seed ^= *seed << 13;
        *seed ^= *seed >> 7;
        *seed ^= *seed << 17;
        (*seed >> 11) as f64 / (1u64 << 53) as f64
    }

    #[test]
    fn endpoint_residuals_for_random_boundaries() {
        let mut seed = 0x12345u64;
        for _ in 0..1000 {
            let r = |s: &mut u64, lo: f64, hi: f64| lo + (hi - lo) * pseudo(s);
            let start = BoundaryState {
                x: r(&mut seed, -1e4, 1e4),
                vx: r(&mut seed, 0.0, 40.0),
                ax: r(&mut seed, -4.0, 4.0),
                y: r(&mut seed, -4.0, 4.0),
                vy: r(&mut seed, -2.0, 2.0),
                ay: r(&mut seed, -2.0, 2.0),
            };
            let end = BoundaryState {
                x: start.x + r(&mut seed, -100.0, 400.0),
                vx: r(&mut seed, 0.0, 40.0),
                ax: r(&mut seed, -4.0, 4.0),
                y: r(&mut seed, -4.0, 4.0),
                vy: r(&mut seed, -2.0, 2.0),
                ay: r(&mut seed, -2.0, 2.0),
            };
            let dur = r(&mut seed, 0.4, 20.0);
            let seg = solve_segment(&start, &end, dur, 0.0, SubAction::Wait).unwrap();
            let got0 = seg.start_sample();
            let got1 = seg.end_sample();
            for (got, want) in [
                (got0.x, start.x),
                (got0.vx, start.vx),
                (got0.ax, start.ax),
                (got1.x, end.x),
                (got1.vx, end.vx),
                (got1.ax, end.ax),
                (got0.y, start.y),
                (got0.vy, start.vy),
                (got0.ay, start.ay),
                (got1.y, end.y),
                (got1.vy, end.vy),
                (got1.ay, end.ay),
            ] {
                assert!(
                    (got - want).abs() < 1e-9 * (1.0 + want.abs()),
                    "residual {} vs {}",
                    got,
                    want
                );
            }
        }
    }

    #[test]
    fn finite_difference_matches_derivatives() {
        let start = BoundaryState {
            x: 3.0,
            vx: 12.0,
            ax: 0.5,
            ..Default::default()
        };
        let end = BoundaryState {
            x: 80.0,
            vx: 18.0,
            ax: 0.0,
            ..Default::default()
        };
        let seg = solve_segment(&start, &end, 6.0, 0.0, SubAction::Wait).unwrap();
        let h = 1e-3;
        let mut t = h;
        while t < 6.0 - h {
            let f = |tt: f64| seg.eval(tt).unwrap();
            let v_fd = (f(t + h).x - f(t - h).x) / (2.0 * h);
            let a_fd = (f(t + h).vx - f(t - h).vx) / (2.0 * h);
            let s = f(t);
            assert_abs_diff_eq!(v_fd, s.vx, epsilon = 1e-4);
            assert_abs_diff_eq!(a_fd, s.ax, epsilon = 1e-4);
            t += 0.217;
        }
    }

    #[test]
    fn trajectory_requires_continuity() {
        let a = QuinticSegment::constant_accel(
            &BoundaryState {
                vx: 10.0,
                ..Default::default()
            },
            0.0,
            2.0,
            0.0,
            SubAction::Wait,
        )
        .unwrap();
        let cont = QuinticSegment::constant_accel(
            &BoundaryState {
                x: 20.0,
                vx: 10.0,
                ..Default::default()
            },
            0.0,
            2.0,
            2.0,
            SubAction::Wait,
        )
        .unwrap();
        assert!(Trajectory::new(vec![a.clone(), cont]).is_ok());

        let jumpy = QuinticSegment::constant_accel(
            &BoundaryState {
                x: 21.0,
                vx: 10.0,
                ..Default::default()
            },
            0.0,
            2.0,
            2.0,
            SubAction::Wait,
        )
        .unwrap();
        assert!(matches!(
            Trajectory::new(vec![a, jumpy]),
            Err(QuinticError::Discontinuous { .. })
        ));
    }

    fn limits() -> PlanLimits {
        PlanLimits {
            v_max: PerLane {
                left: 30.0,
                right: 20.0,
            },
            a_max: 2.0,
            j_max: 3.5,
            t_p: 3.5,
            t_g: 0.55,
            horizon: 10.0,
            lane_width: 3.6,
            tol: 1e-6,
        }
    }

    fn no_leaders() -> LeaderPrediction {
        LeaderPrediction {
            t0: 0.0,
            horizon: 20.0,
            dt: 0.1,
            tracks: vec![],
        }
    }

    fn cruise(v: f64, dur: f64) -> Trajectory {
        let seg = QuinticSegment::constant_accel(
            &BoundaryState {
                vx: v,
                ..Default::default()
            },
            0.0,
            dur,
            0.0,
            SubAction::Wait,
        )
        .unwrap();
        Trajectory::new(vec![seg]).unwrap()
    }

    #[test]
    fn feasible_at_speed_boundary() {
        let traj = cruise(20.0, 10.0);
        let report = check_feasibility(&traj, &limits(), &no_leaders(), 0.1);
        assert!(report.feasible);
    }

    #[test]
    fn acceleration_violation_detected() {
        let seg = QuinticSegment::constant_accel(
            &BoundaryState {
                vx: 5.0,
                ..Default::default()
            },
            2.5,
            2.0,
            0.0,
            SubAction::Wait,
        )
        .unwrap();
        let traj = Trajectory::new(vec![seg]).unwrap();
        let report = check_feasibility(&traj, &limits(), &no_leaders(), 0.1);
        assert!(!report.feasible);
        assert_eq!(
            report.first_violation.unwrap().kind,
            ViolationKind::Acceleration
        );
    }

    #[test]
    fn leader_gap_violation_detected() {
        // subject at x=0, v=20; leader parked at x=60 (5 m long): bumper gap
        // 55 < 3.5 * 20
        let traj = cruise(20.0, 10.0);
        let leaders = LeaderPrediction {
            t0: 0.0,
            horizon: 20.0,
            dt: 0.1,
            tracks: vec![PredictedTrack {
                role: TrackRole::Leader,
                lane: Lane::Right,
                id: VehicleId(1),
                x0: 60.0,
                v0: 0.0,
                length: 5.0,
            }],
        };
        let report = check_feasibility(&traj, &limits(), &leaders, 0.1);
        assert!(!report.feasible);
        let v = report.first_violation.unwrap();
        assert_eq!(v.kind, ViolationKind::LeaderGap);
        assert_abs_diff_eq!(v.t, 0.0);
    }

    #[test]
    fn relaxing_limits_preserves_feasibility() {
        let mut seed = 0x9876u64;
        for _ in 0..200 {
            let r = |s: &mut u64, lo: f64, hi: f64| lo + (hi - lo) * pseudo(s);
            let start = BoundaryState {
                vx: r(&mut seed, 0.0, 20.0),
                ..Default::default()
            };
            let end = BoundaryState {
                x: r(&mut seed, 10.0, 180.0),
                vx: r(&mut seed, 0.0, 20.0),
                ..Default::default()
            };
            let seg = solve_segment(&start, &end, 10.0, 0.0, SubAction::Wait).unwrap();
            let traj = Trajectory::new(vec![seg]).unwrap();
            let tight = limits();
            let mut loose = tight;
            loose.a_max *= 2.0;
            loose.j_max *= 2.0;
            loose.v_max.left *= 2.0;
            loose.v_max.right *= 2.0;
            let was = check_feasibility(&traj, &tight, &no_leaders(), 0.1).feasible;
            let now = check_feasibility(&traj, &loose, &no_leaders(), 0.1).feasible;
            if was {
                assert!(now);
            }
        }
    }

    #[test]
    fn lane_occupancy_rules() {
        assert_eq!(lane_for_speed(0.0, 3.6), Lane::Right);
        assert_eq!(lane_for_speed(3.6, 3.6), Lane::Left);
        assert_eq!(lanes_for_gap(0.0, 3.6), (Lane::Right, None));
        assert_eq!(lanes_for_gap(3.6, 3.6), (Lane::Left, None));
        assert_eq!(lanes_for_gap(1.8, 3.6), (Lane::Right, Some(Lane::Left)));
    }

    #[test]
    fn csv_header_and_rows() {
        let traj = cruise(10.0, 1.0);
        let csv = traj.to_csv(0.5);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,x,y,vx,vy,ax,ay");
        assert_eq!(lines.len(), 4);
    }
}
