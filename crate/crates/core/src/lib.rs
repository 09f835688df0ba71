//! Microscopic two-lane highway simulation with an embedded optimal-control
//! trajectory planner for a single connected automated subject vehicle.
//!
//! The crate is organized around the pipeline used by the experiment harness:
//! a [`road::RoadNetwork`] carries the piecewise highway layout, [`sim`]
//! evolves the surrounding traffic (ramp entries/exits, platoon merge/split,
//! random lane changes, IDM car following), and [`planner`] replans the
//! subject vehicle every update period by searching quintic trajectory
//! candidates ([`quintic`]) over the maneuver sequences in [`maneuver`].
//! Trip costs and the statistical comparisons live in [`cost`], and
//! [`experiment`] runs the full controller x traffic-state x value-of-time
//! matrix.

pub mod cost;
pub mod experiment;
pub mod maneuver;
pub mod params;
pub mod planner;
pub mod quintic;
pub mod rng;
pub mod road;
pub mod scenario;
pub mod sim;
pub mod world;

pub use params::Params;
