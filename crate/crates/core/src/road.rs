//! Highway layout: an ordered run of road pieces with ramp flags.
//!
//! Coordinates are one-dimensional longitudinal meters from the trip origin.
//! Piece boundaries are left-closed/right-open, so a vehicle sitting exactly
//! on a boundary belongs to the downstream piece. Pieces are capped at 600 m
//! so that a single road-side unit can cover each piece.

use thiserror::Error;

pub const MAX_PIECE_LENGTH: f64 = 600.0;

#[derive(Debug, Error, PartialEq)]
pub enum RoadError {
    #[error("coordinate {x} outside [0, {total})")]
    OutOfRange { x: f64, total: f64 },
    #[error("piece {index}: invalid length {length}")]
    BadPieceLength { index: usize, length: f64 },
    #[error("network config: {0}")]
    BadConfig(String),
}

/// Lane labels for the two-lane highway.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lane {
    Left,
    Right,
}

impl Lane {
    pub fn other(self) -> Lane {
        match self {
            Lane::Left => Lane::Right,
            Lane::Right => Lane::Left,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Lane::Left => "left",
            Lane::Right => "right",
        }
    }

    pub const BOTH: [Lane; 2] = [Lane::Left, Lane::Right];
}

/// A pair of values indexed by lane.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PerLane<T> {
    pub left: T,
    pub right: T,
}

impl<T> PerLane<T> {
    pub fn get(&self, lane: Lane) -> &T {
        match lane {
            Lane::Left => &self.left,
            Lane::Right => &self.right,
        }
    }

    pub fn get_mut(&mut self, lane: Lane) -> &mut T {
        match lane {
            Lane::Left => &mut self.left,
            Lane::Right => &mut self.right,
        }
    }
}

/// One homogeneous section of highway.
#[derive(Debug, Clone, PartialEq)]
pub struct RoadPiece {
    /// Ordinal, 1-based.
    pub index: usize,
    pub length: f64,
    pub has_onramp: bool,
    pub has_offramp: bool,
    /// Cumulative start coordinate, meters.
    pub start_x: f64,
}

impl RoadPiece {
    pub fn end_x(&self) -> f64 {
        self.start_x + self.length
    }

    /// Ramp entry/exit point: the piece midpoint.
    pub fn ramp_x(&self) -> f64 {
        self.start_x + 0.5 * self.length
    }
}

/// The full two-lane network.
#[derive(Debug, Clone)]
pub struct RoadNetwork {
    pieces: Vec<RoadPiece>,
    pub total_length: f64,
    /// Maximum lane speeds, m/s.
    pub v_max: PerLane<f64>,
    /// Lane speeds at maximum flow, m/s.
    pub v_capacity: PerLane<f64>,
}

/// Piece descriptor used when building a network.
#[derive(Debug, Clone, Copy)]
pub struct PieceSpec {
    pub length: f64,
    pub onramp: bool,
    pub offramp: bool,
}

impl RoadNetwork {
    pub fn new(
        specs: &[PieceSpec],
        v_max: PerLane<f64>,
        v_capacity: PerLane<f64>,
    ) -> Result<Self, RoadError> {
        if specs.is_empty() {
            return Err(RoadError::BadConfig("no pieces".into()));
        }
        let mut pieces = Vec::with_capacity(specs.len());
        let mut x = 0.0;
        for (i, spec) in specs.iter().enumerate() {
            if !(spec.length > 0.0 && spec.length <= MAX_PIECE_LENGTH) {
                return Err(RoadError::BadPieceLength {
                    index: i + 1,
                    length: spec.length,
                });
            }
            pieces.push(RoadPiece {
                index: i + 1,
                length: spec.length,
                has_onramp: spec.onramp,
                has_offramp: spec.offramp,
                start_x: x,
            });
            x += spec.length;
        }
        Ok(RoadNetwork {
            pieces,
            total_length: x,
            v_max,
            v_capacity,
        })
    }

    /// The 10.8 km, 20-piece network used by the experiments: on-ramps on
    /// pieces 1 and 18, off-ramps on pieces 4, 12 and 20, piece lengths
    /// 400/300/200/300 m on pieces 1/4/12/18 and 600 m elsewhere.
    pub fn paper_default() -> Self {
        let mut specs = [PieceSpec {
            length: 600.0,
            onramp: false,
            offramp: false,
        }; 20];
        specs[0].length = 400.0;
        specs[0].onramp = true;
        specs[3].length = 300.0;
        specs[3].offramp = true;
        specs[11].length = 200.0;
        specs[11].offramp = true;
        specs[17].length = 300.0;
        specs[17].onramp = true;
        specs[19].offramp = true;
        RoadNetwork::new(
            &specs,
            PerLane {
                left: 30.0,
                right: 20.0,
            },
            PerLane {
                left: 20.0,
                right: 14.0,
            },
        )
        .expect("paper network is valid")
    }

    /// Parses a plain-text network description: one piece per line,
    /// `LENGTH [on] [off]`, `#` comments allowed.
    pub fn from_config(
        text: &str,
        v_max: PerLane<f64>,
        v_capacity: PerLane<f64>,
    ) -> Result<Self, RoadError> {
        let mut specs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let length: f64 = parts
                .next()
                .unwrap()
                .parse()
                .map_err(|e| RoadError::BadConfig(format!("line {}: {e}", lineno + 1)))?;
            let mut spec = PieceSpec {
                length,
                onramp: false,
                offramp: false,
            };
            for tok in parts {
                match tok {
                    "on" => spec.onramp = true,
                    "off" => spec.offramp = true,
                    other => {
                        return Err(RoadError::BadConfig(format!(
                            "line {}: unknown token `{other}`",
                            lineno + 1
                        )))
                    }
                }
            }
            specs.push(spec);
        }
        RoadNetwork::new(&specs, v_max, v_capacity)
    }

    pub fn pieces(&self) -> &[RoadPiece] {
        &self.pieces
    }

    pub fn piece(&self, ordinal: usize) -> &RoadPiece {
        &self.pieces[ordinal - 1]
    }

    /// Ordinal of the piece containing `x` (left-closed/right-open pieces).
    pub fn piece_at(&self, x: f64) -> Result<usize, RoadError> {
        if !(0.0..self.total_length).contains(&x) {
            return Err(RoadError::OutOfRange {
                x,
                total: self.total_length,
            });
        }
        // partition_point: first piece whose start is beyond x.
        let idx = self.pieces.partition_point(|p| p.start_x <= x);
        Ok(idx)
    }

    /// Smallest piece boundary strictly greater than `x`; the network end if
    /// `x` is inside the last piece.
    pub fn next_transition(&self, x: f64) -> Result<f64, RoadError> {
        let piece = self.piece_at(x)?;
        Ok(self.pieces[piece - 1].end_x())
    }

    /// On-ramp entry points (piece midpoints), ascending.
    pub fn onramp_positions(&self) -> Vec<f64> {
        self.pieces
            .iter()
            .filter(|p| p.has_onramp)
            .map(|p| p.ramp_x())
            .collect()
    }

    /// Off-ramp exit points (piece midpoints), ascending.
    pub fn offramp_positions(&self) -> Vec<f64> {
        self.pieces
            .iter()
            .filter(|p| p.has_offramp)
            .map(|p| p.ramp_x())
            .collect()
    }

    /// Whether the open interval (from, to] contains a piece boundary.
    pub fn crossed_transition(&self, from: f64, to: f64) -> bool {
        if to <= from {
            return false;
        }
        match self.piece_at(from.max(0.0)) {
            Ok(p) => self.pieces[p - 1].end_x() <= to,
            Err(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_network_layout() {
        let net = RoadNetwork::paper_default();
        assert_eq!(net.pieces().len(), 20);
        assert_eq!(net.total_length, 10_800.0);
        assert_eq!(net.piece(1).length, 400.0);
        assert_eq!(net.piece(4).length, 300.0);
        assert_eq!(net.piece(12).length, 200.0);
        assert_eq!(net.piece(18).length, 300.0);
        assert_eq!(net.piece(2).start_x, 400.0);
        let on: Vec<usize> = net
            .pieces()
            .iter()
            .filter(|p| p.has_onramp)
            .map(|p| p.index)
            .collect();
        let off: Vec<usize> = net
            .pieces()
            .iter()
            .filter(|p| p.has_offramp)
            .map(|p| p.index)
            .collect();
        assert_eq!(on, vec![1, 18]);
        assert_eq!(off, vec![4, 12, 20]);
        assert_eq!(net.v_max.left, 30.0);
        assert_eq!(net.v_capacity.right, 14.0);
        // exact piece-length sum
        let sum: f64 = net.pieces().iter().map(|p| p.length).sum();
        assert_eq!(sum, net.total_length);
    }

    #[test]
    fn piece_at_boundaries() {
        let net = RoadNetwork::paper_default();
        assert_eq!(net.piece_at(0.0).unwrap(), 1);
        assert_eq!(net.piece_at(400.0).unwrap(), 2);
        // cumulative-sum oracle over the 20 lengths
        let mut start = vec![0.0];
        for p in net.pieces() {
            start.push(p.start_x + p.length);
        }
        let oracle = |x: f64| (1..=20).find(|&i| x >= start[i - 1] && x < start[i]).unwrap();
        assert_eq!(net.piece_at(10_799.0).unwrap(), oracle(10_799.0));
        assert_eq!(net.piece_at(10_799.0).unwrap(), 20);
        for i in 0..1000 {
            let x = 10_800.0 * (i as f64 + 0.5) / 1000.0;
            assert_eq!(net.piece_at(x).unwrap(), oracle(x));
        }
        assert!(net.piece_at(-1.0).is_err());
        assert!(net.piece_at(10_800.0).is_err());
    }

    #[test]
    fn containment_invariant() {
        let net = RoadNetwork::paper_default();
        for i in 0..4000 {
            let x = 10_800.0 * i as f64 / 4000.0;
            let p = net.piece(net.piece_at(x).unwrap());
            assert!(p.start_x <= x && x < p.end_x());
        }
    }

    #[test]
    fn next_transition_examples() {
        let net = RoadNetwork::paper_default();
        assert_eq!(net.next_transition(0.0).unwrap(), 400.0);
        assert_eq!(net.next_transition(400.0).unwrap(), 1000.0);
        assert_eq!(net.next_transition(10_750.0).unwrap(), 10_800.0);
        // strictly increasing across pieces, idempotent within a piece
        assert_eq!(net.next_transition(100.0), net.next_transition(399.9));
        let mut x = 0.0;
        let mut prev = 0.0;
        while x < net.total_length {
            let t = net.next_transition(x).unwrap();
            assert!(t > x);
            assert!(t >= prev);
            prev = t;
            x += 37.0;
        }
    }

    #[test]
    fn crossed_transition_detection() {
        let net = RoadNetwork::paper_default();
        assert!(net.crossed_transition(395.0, 402.0));
        assert!(net.crossed_transition(395.0, 400.0)); // boundary belongs to (from, to]
        assert!(!net.crossed_transition(395.0, 399.9));
        assert!(!net.crossed_transition(402.0, 401.0));
    }

    #[test]
    fn rejects_bad_pieces() {
        let specs = [PieceSpec {
            length: 601.0,
            onramp: false,
            offramp: false,
        }];
        assert!(matches!(
            RoadNetwork::new(&specs, PerLane::default(), PerLane::default()),
            Err(RoadError::BadPieceLength { .. })
        ));
    }

    #[test]
    fn config_roundtrip() {
        let text = "400 on\n600\n# comment\n300 off # trailing\n";
        let net = RoadNetwork::from_config(
            text,
            PerLane {
                left: 30.0,
                right: 20.0,
            },
            PerLane {
                left: 20.0,
                right: 14.0,
            },
        )
        .unwrap();
        assert_eq!(net.pieces().len(), 3);
        assert!(net.piece(1).has_onramp);
        assert!(net.piece(3).has_offramp);
        assert_eq!(net.total_length, 1300.0);
        assert!(RoadNetwork::from_config("400 bogus", PerLane::default(), PerLane::default())
            .is_err());
    }
}
