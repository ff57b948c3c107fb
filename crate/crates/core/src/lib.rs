//! Stabbing information for simple polygons: Tail/Body/Head crossing counts of
//! the lines through vertex pairs, their zero-parity reduction, and a
//! classifier that tells internal from external visibility edges using the
//! reduced counts alone.

pub mod analysis;
pub mod classifier;
pub mod continuous;
pub mod geom;
pub mod io;
pub mod oracle;
pub mod ordertype;
pub mod polygon;
pub mod render;
pub mod stabbing;
pub mod visibility;

pub use geom::{orient, ray_line_component, segments_properly_cross, Component, Location, Orientation, Point};
pub use polygon::{chain_vertices, point_in_polygon, vertex_flags, Chain, Polygon, PolygonError, VertexFlags};
pub use stabbing::{
    pp_table, stab_table, stab_triple, visible_pairs, zp_table, PpClass, PpTable, StabTable, StabTriple, ZpClass,
    ZpTable, ZpTriple,
};
pub use visibility::{is_nontriangular, is_triangular_chain, visibility_oracle, TriangularWitness, VisClass, VisibilityMap};
