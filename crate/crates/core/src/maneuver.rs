//! The subject vehicle's maneuver state machine: six states, four sub-action
//! kinds, and the sub-action sequence prescribed for every (state, target)
//! pair. The sequences are stored as literal data rather than derived.

use thiserror::Error;

use crate::road::Lane;

#[derive(Debug, Error, PartialEq)]
pub enum ManeuverError {
    #[error("sub-action {action:?} is illegal in mode {mode:?}")]
    IllegalTransition { mode: SubjectMode, action: SubAction },
    #[error("countdown event is only defined for active platoon modes, not {0:?}")]
    IllegalCountdown(SubjectMode),
}

/// The six subject states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubjectMode {
    LeftFree,
    RightFree,
    /// In a platoon whose scheduled splitting position has not been reached.
    LeftPlatoonActive,
    RightPlatoonActive,
    /// The splitting position has been reached and the platoon is dissolving.
    LeftPlatoonPassive,
    RightPlatoonPassive,
}

impl SubjectMode {
    pub const ALL: [SubjectMode; 6] = [
        SubjectMode::LeftFree,
        SubjectMode::RightFree,
        SubjectMode::LeftPlatoonActive,
        SubjectMode::RightPlatoonActive,
        SubjectMode::LeftPlatoonPassive,
        SubjectMode::RightPlatoonPassive,
    ];

    pub fn lane(self) -> Lane {
        match self {
            SubjectMode::LeftFree
            | SubjectMode::LeftPlatoonActive
            | SubjectMode::LeftPlatoonPassive => Lane::Left,
            SubjectMode::RightFree
            | SubjectMode::RightPlatoonActive
            | SubjectMode::RightPlatoonPassive => Lane::Right,
        }
    }

    pub fn in_platoon(self) -> bool {
        !matches!(self, SubjectMode::LeftFree | SubjectMode::RightFree)
    }

    pub fn is_passive(self) -> bool {
        matches!(
            self,
            SubjectMode::LeftPlatoonPassive | SubjectMode::RightPlatoonPassive
        )
    }

    /// The target state that keeps the subject where it is.
    pub fn hold_target(self) -> TargetState {
        match self {
            SubjectMode::LeftFree => TargetState::LeftFree,
            SubjectMode::RightFree => TargetState::RightFree,
            SubjectMode::LeftPlatoonActive | SubjectMode::LeftPlatoonPassive => {
                TargetState::LeftPlatoon
            }
            SubjectMode::RightPlatoonActive | SubjectMode::RightPlatoonPassive => {
                TargetState::RightPlatoon
            }
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SubjectMode::LeftFree => "left_free",
            SubjectMode::RightFree => "right_free",
            SubjectMode::LeftPlatoonActive => "left_platoon_active",
            SubjectMode::RightPlatoonActive => "right_platoon_active",
            SubjectMode::LeftPlatoonPassive => "left_platoon_passive",
            SubjectMode::RightPlatoonPassive => "right_platoon_passive",
        }
    }
}

/// The four sub-action kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubAction {
    Wait,
    Merge,
    Split,
    LaneChange,
}

/// The four target states offered to the planner each cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetState {
    LeftFree,
    LeftPlatoon,
    RightFree,
    RightPlatoon,
}

impl TargetState {
    pub const ALL: [TargetState; 4] = [
        TargetState::LeftFree,
        TargetState::LeftPlatoon,
        TargetState::RightFree,
        TargetState::RightPlatoon,
    ];

    pub fn lane(self) -> Lane {
        match self {
            TargetState::LeftFree | TargetState::LeftPlatoon => Lane::Left,
            TargetState::RightFree | TargetState::RightPlatoon => Lane::Right,
        }
    }

    pub fn in_platoon(self) -> bool {
        matches!(self, TargetState::LeftPlatoon | TargetState::RightPlatoon)
    }

    pub fn label(self) -> &'static str {
        match self {
            TargetState::LeftFree => "left_free",
            TargetState::LeftPlatoon => "left_platoon",
            TargetState::RightFree => "right_free",
            TargetState::RightPlatoon => "right_platoon",
        }
    }
}

/// A target state together with its prescribed sub-action sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct ManeuverPlan {
    pub target: TargetState,
    pub sequence: &'static [SubAction],
}

use SubAction::{LaneChange, Merge, Split, Wait};

// The 24 (state, target) rows, in TargetState::ALL order per mode.
const SEQ_TABLE: [[&[SubAction]; 4]; 6] = [
    // left lane; free agent
    [
        &[Wait],
        &[Merge, Wait],
        &[Wait, LaneChange, Wait],
        &[Wait, LaneChange, Merge, Wait],
    ],
    // right lane; free agent
    [
        &[Wait, LaneChange, Wait],
        &[Wait, LaneChange, Merge, Wait],
        &[Wait],
        &[Merge, Wait],
    ],
    // left lane; in platoon (active)
    [
        &[Split, Wait],
        &[Wait],
        &[Split, Wait, LaneChange, Wait],
        &[Split, Wait, LaneChange, Merge, Wait],
    ],
    // right lane; in platoon (active)
    [
        &[Split, Wait, LaneChange, Wait],
        &[Split, Wait, LaneChange, Merge, Wait],
        &[Split, Wait],
        &[Wait],
    ],
    // left lane; in platoon (passive)
    [
        &[Split, Wait],
        &[Split, Wait, Merge, Wait],
        &[Split, Wait, LaneChange, Wait],
        &[Split, Wait, LaneChange, Merge, Wait],
    ],
    // right lane; in platoon (passive)
    [
        &[Split, Wait, LaneChange, Wait],
        &[Split, Wait, LaneChange, Merge, Wait],
        &[Split, Wait],
        &[Split, Wait, Merge, Wait],
    ],
];

fn mode_row(mode: SubjectMode) -> usize {
    match mode {
        SubjectMode::LeftFree => 0,
        SubjectMode::RightFree => 1,
        SubjectMode::LeftPlatoonActive => 2,
        SubjectMode::RightPlatoonActive => 3,
        SubjectMode::LeftPlatoonPassive => 4,
        SubjectMode::RightPlatoonPassive => 5,
    }
}

fn target_col(target: TargetState) -> usize {
    match target {
        TargetState::LeftFree => 0,
        TargetState::LeftPlatoon => 1,
        TargetState::RightFree => 2,
        TargetState::RightPlatoon => 3,
    }
}

/// The four target states reachable from any mode.
pub fn targets(_mode: SubjectMode) -> [TargetState; 4] {
    TargetState::ALL
}

/// The prescribed sub-action sequence for a (mode, target) pair.
pub fn sequence(mode: SubjectMode, target: TargetState) -> ManeuverPlan {
    ManeuverPlan {
        target,
        sequence: SEQ_TABLE[mode_row(mode)][target_col(target)],
    }
}

/// Mode-changing events consumed by [`advance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeEvent {
    /// A sub-action finished executing.
    Completed(SubAction),
    /// The platoon's scheduled splitting position was reached.
    CountdownZero,
}

/// Advances the subject mode after a completed sub-action or a countdown
/// expiry. `Wait` never changes the mode; `Merge` joins a platoon in the
/// current lane; a completed `Split` frees the subject in its current lane;
/// `LaneChange` keeps the membership and flips the lane.
pub fn advance(mode: SubjectMode, event: ModeEvent) -> Result<SubjectMode, ManeuverError> {
    let illegal = |action| Err(ManeuverError::IllegalTransition { mode, action });
    match event {
        ModeEvent::Completed(Wait) => Ok(mode),
        ModeEvent::Completed(Merge) => match mode {
            SubjectMode::LeftFree => Ok(SubjectMode::LeftPlatoonActive),
            SubjectMode::RightFree => Ok(SubjectMode::RightPlatoonActive),
            _ => illegal(Merge),
        },
        ModeEvent::Completed(Split) => match mode {
            SubjectMode::LeftPlatoonActive | SubjectMode::LeftPlatoonPassive => {
                Ok(SubjectMode::LeftFree)
            }
            SubjectMode::RightPlatoonActive | SubjectMode::RightPlatoonPassive => {
                Ok(SubjectMode::RightFree)
            }
            _ => illegal(Split),
        },
        ModeEvent::Completed(LaneChange) => match mode {
            SubjectMode::LeftFree => Ok(SubjectMode::RightFree),
            SubjectMode::RightFree => Ok(SubjectMode::LeftFree),
            // platoons do not change lane; the sequences always split first
            _ => illegal(LaneChange),
        },
        ModeEvent::CountdownZero => match mode {
            SubjectMode::LeftPlatoonActive => Ok(SubjectMode::LeftPlatoonPassive),
            SubjectMode::RightPlatoonActive => Ok(SubjectMode::RightPlatoonPassive),
            _ => Err(ManeuverError::IllegalCountdown(mode)),
        },
    }
}
