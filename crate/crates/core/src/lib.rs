//! Varieties of Steenrod-algebra module structures on A(2) and B(2) over F2.

pub mod duality;
pub mod error;
pub mod exec;
pub mod family;
pub mod milnor;
pub mod moddef;
pub mod pipeline;
pub mod poly;
pub mod polymat;
pub mod published;
pub mod variety;

pub use error::Error;
pub use exec::Exec;
pub use family::{adem_triples, AdemPass, AdemTriple, BitFamily, Family, PolyFamily};
pub use milnor::{Algebra, MilnorExponent, Part};
pub use pipeline::{reduction, run_case, Case, Reduction};
pub use poly::{Poly, SubstMap, Var, VarTable};
pub use polymat::{ActionMatrix, BitMatrix, PolyMatrix};
pub use variety::{CoordinateMap, Point, Variety};
