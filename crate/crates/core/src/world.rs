//! Simulation state: vehicles, per-lane ordering, neighbor queries,
//! constant-velocity motion prediction, and the append-only event log.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::maneuver::TargetState;
use crate::rng::DrawSource;
use crate::road::{Lane, PerLane, RoadNetwork};

#[derive(Debug, Error, PartialEq)]
pub enum WorldError {
    #[error("unknown vehicle id {0:?}")]
    UnknownVehicle(VehicleId),
}

/// Stable vehicle identifier; ids are never reused within a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VehicleId(pub u32);

/// Platoon membership status.
///
/// A platoon is the maximal same-lane chain of a `Leader` and the
/// `Follower`s that reference it; all members carry the same countdown,
/// measured in road pieces until the scheduled split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Free,
    Leader { countdown: u32 },
    Follower { leader: VehicleId, countdown: u32 },
    /// Detaching from a dissolving platoon: the desired gap has switched to
    /// the free-agent time gap and grows until the vehicle is free.
    Dissolving { former_leader: VehicleId },
}

impl Membership {
    pub fn is_free(&self) -> bool {
        matches!(self, Membership::Free)
    }

    pub fn countdown(&self) -> Option<u32> {
        match self {
            Membership::Leader { countdown } | Membership::Follower { countdown, .. } => {
                Some(*countdown)
            }
            _ => None,
        }
    }

    pub fn platoon_leader(&self, own_id: VehicleId) -> Option<VehicleId> {
        match self {
            Membership::Leader { .. } => Some(own_id),
            Membership::Follower { leader, .. } => Some(*leader),
            _ => None,
        }
    }
}

/// Fuel-coefficient phase derived from membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaPhase {
    /// Free agents and platoon leaders (no drafting benefit at the head).
    Free,
    /// Closing in after a merge or detaching during a split.
    Transition,
    /// Settled platoon follower.
    Platoon,
}

/// An in-progress lane change of a surrounding vehicle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaneChangeState {
    pub from: Lane,
    pub to: Lane,
    pub start_step: u64,
    /// Speed of the target-lane leader when the maneuver started (fallback
    /// target speed if that leader disappears).
    pub target_speed: f64,
}

/// Kinematic and membership state of one simulated vehicle.
#[derive(Debug, Clone, PartialEq)]
pub struct VehicleState {
    pub id: VehicleId,
    pub lane: Lane,
    /// Front-bumper longitudinal position, meters.
    pub x: f64,
    /// Lateral offset from the current lane center, meters (0 outside lane
    /// changes, up to the lane width while one is in progress).
    pub lateral: f64,
    pub v: f64,
    pub a: f64,
    pub length: f64,
    pub platoon_enabled: bool,
    pub membership: Membership,
    /// True while a fresh follower is still closing from the free-agent gap
    /// down to the platoon gap.
    pub closing: bool,
    pub last_lane_change_time: f64,
    pub marked_exit: bool,
    pub lane_change: Option<LaneChangeState>,
    /// Position before the last integration step; used for transition-point
    /// crossing detection.
    pub prev_x: f64,
}

impl VehicleState {
    pub fn new(id: VehicleId, lane: Lane, x: f64, v: f64, length: f64) -> Self {
        VehicleState {
            id,
            lane,
            x,
            lateral: 0.0,
            v,
            a: 0.0,
            length,
            platoon_enabled: false,
            membership: Membership::Free,
            closing: false,
            last_lane_change_time: f64::NEG_INFINITY,
            marked_exit: false,
            lane_change: None,
            prev_x: x,
        }
    }

    pub fn rear_x(&self) -> f64 {
        self.x - self.length
    }

    pub fn beta_phase(&self) -> BetaPhase {
        match self.membership {
            Membership::Free | Membership::Leader { .. } => BetaPhase::Free,
            Membership::Dissolving { .. } => BetaPhase::Transition,
            Membership::Follower { .. } => {
                if self.closing {
                    BetaPhase::Transition
                } else {
                    BetaPhase::Platoon
                }
            }
        }
    }
}

/// Bumper-to-bumper gap from `follower` to `leader`.
pub fn bumper_gap(leader: &VehicleState, follower: &VehicleState) -> f64 {
    leader.x - leader.length - follower.x
}

/// The full simulation snapshot.
#[derive(Debug, Clone)]
pub struct WorldState {
    pub network: Arc<RoadNetwork>,
    pub tau_s: f64,
    pub step_index: u64,
    vehicles: Vec<Option<VehicleState>>,
    /// Per-lane ids ordered by descending x.
    lanes: PerLane<Vec<VehicleId>>,
    pub subject: Option<VehicleId>,
    pub draws: DrawSource,
    pub events: EventLog,
}

impl WorldState {
    pub fn new(network: Arc<RoadNetwork>, tau_s: f64, seed: u64) -> Self {
        WorldState {
            network,
            tau_s,
            step_index: 0,
            vehicles: Vec::new(),
            lanes: PerLane::default(),
            subject: None,
            draws: DrawSource::new(seed),
            events: EventLog::default(),
        }
    }

    /// Simulation clock, an exact multiple of the update step.
    pub fn time(&self) -> f64 {
        self.step_index as f64 * self.tau_s
    }

    pub fn vehicle(&self, id: VehicleId) -> &VehicleState {
        self.vehicles[id.0 as usize]
            .as_ref()
            .expect("vehicle is present")
    }

    pub fn vehicle_mut(&mut self, id: VehicleId) -> &mut VehicleState {
        self.vehicles[id.0 as usize]
            .as_mut()
            .expect("vehicle is present")
    }

    pub fn try_vehicle(&self, id: VehicleId) -> Option<&VehicleState> {
        self.vehicles.get(id.0 as usize).and_then(|v| v.as_ref())
    }

    pub fn contains(&self, id: VehicleId) -> bool {
        self.try_vehicle(id).is_some()
    }

    pub fn vehicle_count(&self) -> usize {
        self.lanes.left.len() + self.lanes.right.len()
    }

    /// Ids in the lane ordered by descending x (downstream first).
    pub fn lane_ids(&self, lane: Lane) -> &[VehicleId] {
        self.lanes.get(lane)
    }

    pub fn iter_vehicles(&self) -> impl Iterator<Item = &VehicleState> {
        self.vehicles.iter().flatten()
    }

    pub fn add_vehicle(&mut self, mut v: VehicleState) -> VehicleId {
        let id = VehicleId(self.vehicles.len() as u32);
        v.id = id;
        v.prev_x = v.x;
        let lane = v.lane;
        let x = v.x;
        self.vehicles.push(Some(v));
        let ids = self.lanes.get_mut(lane);
        let pos = ids.partition_point(|&other| {
            self.vehicles[other.0 as usize]
                .as_ref()
                .map(|o| o.x > x)
                .unwrap_or(false)
        });
        ids.insert(pos, id);
        id
    }

    pub fn remove_vehicle(&mut self, id: VehicleId) -> VehicleState {
        let v = self.vehicles[id.0 as usize]
            .take()
            .expect("vehicle is present");
        self.lanes.get_mut(v.lane).retain(|&other| other != id);
        v
    }

    /// Moves a vehicle to the other lane's ordering (label flip at the lane
    /// midline during a lane change).
    pub fn reassign_lane(&mut self, id: VehicleId, to: Lane) {
        let from = self.vehicle(id).lane;
        if from == to {
            return;
        }
        self.lanes.get_mut(from).retain(|&other| other != id);
        let x = self.vehicle(id).x;
        let pos = {
            let vehicles = &self.vehicles;
            self.lanes.get(to).partition_point(|&other| {
                vehicles[other.0 as usize]
                    .as_ref()
                    .map(|o| o.x > x)
                    .unwrap_or(false)
            })
        };
        self.lanes.get_mut(to).insert(pos, id);
        self.vehicle_mut(id).lane = to;
    }

    /// Restores descending-x order after an integration step.
    pub fn resort_lanes(&mut self) {
        for lane in Lane::BOTH {
            let vehicles = &self.vehicles;
            self.lanes.get_mut(lane).sort_by(|&a, &b| {
                let xa = vehicles[a.0 as usize].as_ref().map(|v| v.x).unwrap_or(0.0);
                let xb = vehicles[b.0 as usize].as_ref().map(|v| v.x).unwrap_or(0.0);
                xb.partial_cmp(&xa).expect("positions are finite")
            });
        }
    }

    /// First same-lane overlap (leader id, follower id), if any.
    pub fn find_overlap(&self) -> Option<(VehicleId, VehicleId)> {
        for lane in Lane::BOTH {
            let ids = self.lanes.get(lane);
            for pair in ids.windows(2) {
                let leader = self.vehicle(pair[0]);
                let follower = self.vehicle(pair[1]);
                if bumper_gap(leader, follower) <= 0.0 {
                    return Some((pair[0], pair[1]));
                }
            }
        }
        None
    }

    /// Nearest vehicle ahead of `x` in `lane`, excluding `exclude`.
    pub fn leader_at(&self, lane: Lane, x: f64, exclude: Option<VehicleId>) -> Option<VehicleId> {
        let ids = self.lanes.get(lane);
        let k = ids.partition_point(|&vid| self.vehicle(vid).x > x);
        ids[..k]
            .iter()
            .rev()
            .copied()
            .find(|&vid| Some(vid) != exclude)
    }

    /// Nearest vehicle at or behind `x` in `lane`, excluding `exclude`.
    pub fn follower_at(&self, lane: Lane, x: f64, exclude: Option<VehicleId>) -> Option<VehicleId> {
        let ids = self.lanes.get(lane);
        let k = ids.partition_point(|&vid| self.vehicle(vid).x > x);
        ids[k..].iter().copied().find(|&vid| Some(vid) != exclude)
    }

    /// Nearest vehicle with larger x in the given lane (`lane` need not be
    /// the vehicle's own lane; cross-lane queries support lane-change checks).
    pub fn leader_of(&self, id: VehicleId, lane: Lane) -> Result<Option<VehicleId>, WorldError> {
        let v = self.try_vehicle(id).ok_or(WorldError::UnknownVehicle(id))?;
        Ok(self.leader_at(lane, v.x, Some(id)))
    }

    pub fn follower_of(&self, id: VehicleId, lane: Lane) -> Result<Option<VehicleId>, WorldError> {
        let v = self.try_vehicle(id).ok_or(WorldError::UnknownVehicle(id))?;
        Ok(self.follower_at(lane, v.x, Some(id)))
    }

    /// The `n_per_lane` nearest vehicles behind the subject in each lane.
    pub fn upstream_sample(&self, n_per_lane: usize) -> Vec<VehicleId> {
        let subject = match self.subject {
            Some(id) => id,
            None => return Vec::new(),
        };
        let x = self.vehicle(subject).x;
        let mut out = Vec::new();
        for lane in Lane::BOTH {
            let ids = self.lanes.get(lane);
            let k = ids.partition_point(|&vid| self.vehicle(vid).x > x);
            out.extend(
                ids[k..]
                    .iter()
                    .copied()
                    .filter(|&vid| vid != subject)
                    .take(n_per_lane),
            );
        }
        out
    }

    /// Constant-velocity extrapolation of the subject's neighbors in both
    /// lanes over at least `horizon` seconds.
    pub fn predict_leaders(&self, horizon: f64) -> LeaderPrediction {
        let mut tracks = Vec::with_capacity(4);
        if let Some(subject) = self.subject {
            let sx = self.vehicle(subject).x;
            for lane in Lane::BOTH {
                if let Some(id) = self.leader_at(lane, sx, Some(subject)) {
                    tracks.push(PredictedTrack::from_vehicle(
                        self.vehicle(id),
                        TrackRole::Leader,
                    ));
                }
                if let Some(id) = self.follower_at(lane, sx, Some(subject)) {
                    tracks.push(PredictedTrack::from_vehicle(
                        self.vehicle(id),
                        TrackRole::Follower,
                    ));
                }
            }
        }
        LeaderPrediction {
            t0: self.time(),
            horizon,
            dt: 0.1,
            tracks,
        }
    }
}

/// Which neighbor a predicted track describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrackRole {
    Leader,
    Follower,
}

/// Constant-velocity prediction of one neighbor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictedTrack {
    pub role: TrackRole,
    pub lane: Lane,
    pub id: VehicleId,
    pub x0: f64,
    pub v0: f64,
    pub length: f64,
}

impl PredictedTrack {
    pub fn from_vehicle(v: &VehicleState, role: TrackRole) -> Self {
        PredictedTrack {
            role,
            lane: v.lane,
            id: v.id,
            x0: v.x,
            v0: v.v,
            length: v.length,
        }
    }

    /// Predicted front-bumper position `dt` seconds after the prediction
    /// epoch.
    pub fn pos_at(&self, dt: f64) -> f64 {
        self.x0 + self.v0 * dt
    }
}

/// Motion prediction for the subject's current and prospective neighbors.
#[derive(Debug, Clone, PartialEq)]
pub struct LeaderPrediction {
    /// Prediction epoch (world clock when the snapshot was taken).
    pub t0: f64,
    pub horizon: f64,
    /// Sample spacing for consumers that materialize the tracks.
    pub dt: f64,
    pub tracks: Vec<PredictedTrack>,
}

impl LeaderPrediction {
    pub fn leader_in(&self, lane: Lane) -> Option<&PredictedTrack> {
        self.tracks
            .iter()
            .find(|t| t.role == TrackRole::Leader && t.lane == lane)
    }

    pub fn follower_in(&self, lane: Lane) -> Option<&PredictedTrack> {
        self.tracks
            .iter()
            .find(|t| t.role == TrackRole::Follower && t.lane == lane)
    }
}

/// Formats a float with 9 significant digits, locale-free.
pub fn fmt9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{:.8e}", x)
}

/// One logged simulation event.
#[derive(Debug, Clone, PartialEq)]
pub enum EventKind {
    Enter {
        id: VehicleId,
        lane: Lane,
        x: f64,
        v: f64,
    },
    Exit {
        id: VehicleId,
        lane: Lane,
        x: f64,
    },
    Merge {
        id: VehicleId,
        leader: VehicleId,
        x: f64,
        countdown: u32,
    },
    CountdownZero {
        leader: VehicleId,
        x: f64,
    },
    DetachStart {
        id: VehicleId,
        x: f64,
    },
    DetachDone {
        id: VehicleId,
        x: f64,
    },
    LaneChangeStart {
        id: VehicleId,
        from: Lane,
        to: Lane,
        x: f64,
    },
    LaneChangeDone {
        id: VehicleId,
        lane: Lane,
        x: f64,
    },
    SubjectPlan {
        target: Option<TargetState>,
        cost: f64,
        feasible: bool,
        fallback: bool,
    },
    SubjectMerge {
        leader: VehicleId,
        x: f64,
        countdown: u32,
    },
    SubjectSplitStart {
        x: f64,
    },
    SubjectSplitDone {
        x: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    pub step: u64,
    pub kind: EventKind,
}

/// Append-only event record; serializes to one line per event.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EventLog {
    pub entries: Vec<Event>,
}

impl EventLog {
    pub fn log(&mut self, step: u64, kind: EventKind) {
        self.entries.push(Event { step, kind });
    }

    pub fn serialize(&self, tau_s: f64) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let t = e.step as f64 * tau_s;
            let _ = write!(out, "{} ", fmt9(t));
            match &e.kind {
                EventKind::Enter { id, lane, x, v } => {
                    let _ = writeln!(
                        out,
                        "enter id={} lane={} x={} v={}",
                        id.0,
                        lane.label(),
                        fmt9(*x),
                        fmt9(*v)
                    );
                }
                EventKind::Exit { id, lane, x } => {
                    let _ = writeln!(out, "exit id={} lane={} x={}", id.0, lane.label(), fmt9(*x));
                }
                EventKind::Merge {
                    id,
                    leader,
                    x,
                    countdown,
                } => {
                    let _ = writeln!(
                        out,
                        "merge id={} leader={} x={} countdown={}",
                        id.0,
                        leader.0,
                        fmt9(*x),
                        countdown
                    );
                }
                EventKind::CountdownZero { leader, x } => {
                    let _ = writeln!(out, "countdown_zero leader={} x={}", leader.0, fmt9(*x));
                }
                EventKind::DetachStart { id, x } => {
                    let _ = writeln!(out, "detach_start id={} x={}", id.0, fmt9(*x));
                }
                EventKind::DetachDone { id, x } => {
                    let _ = writeln!(out, "detach_done id={} x={}", id.0, fmt9(*x));
                }
                EventKind::LaneChangeStart { id, from, to, x } => {
                    let _ = writeln!(
                        out,
                        "lane_change_start id={} from={} to={} x={}",
                        id.0,
                        from.label(),
                        to.label(),
                        fmt9(*x)
                    );
                }
                EventKind::LaneChangeDone { id, lane, x } => {
                    let _ = writeln!(
                        out,
                        "lane_change_done id={} lane={} x={}",
                        id.0,
                        lane.label(),
                        fmt9(*x)
                    );
                }
                EventKind::SubjectPlan {
                    target,
                    cost,
                    feasible,
                    fallback,
                } => {
                    let name = target.map(|t| t.label()).unwrap_or("none");
                    let _ = writeln!(
                        out,
                        "subject_plan target={} cost={} feasible={} fallback={}",
                        name,
                        fmt9(*cost),
                        feasible,
                        fallback
                    );
                }
                EventKind::SubjectMerge {
                    leader,
                    x,
                    countdown,
                } => {
                    let _ = writeln!(
                        out,
                        "subject_merge leader={} x={} countdown={}",
                        leader.0,
                        fmt9(*x),
                        countdown
                    );
                }
                EventKind::SubjectSplitStart { x } => {
                    let _ = writeln!(out, "subject_split_start x={}", fmt9(*x));
                }
                EventKind::SubjectSplitDone { x } => {
                    let _ = writeln!(out, "subject_split_done x={}", fmt9(*x));
                }
            }
        }
        out
    }
}

/// Line-oriented snapshot of all vehicles, for golden-file comparisons.
pub fn serialize_snapshot(world: &WorldState) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "t={} n={}", fmt9(world.time()), world.vehicle_count());
    for lane in Lane::BOTH {
        for &id in world.lane_ids(lane) {
            let v = world.vehicle(id);
            let membership = match v.membership {
                Membership::Free => "free".to_string(),
                Membership::Leader { countdown } => format!("leader:{countdown}"),
                Membership::Follower { leader, countdown } => {
                    format!("follower:{}:{}", leader.0, countdown)
                }
                Membership::Dissolving { former_leader } => {
                    format!("dissolving:{}", former_leader.0)
                }
            };
            let _ = writeln!(
                out,
                "id={} lane={} x={} v={} pe={} m={}",
                id.0,
                lane.label(),
                fmt9(v.x),
                fmt9(v.v),
                v.platoon_enabled,
                membership
            );
        }
    }
    out
}
