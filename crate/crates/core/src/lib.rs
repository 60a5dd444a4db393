//! Finite Brandt groupoids and almost groupoids.
//!
//! Structures are built from explicit parts (names, unit set, anchor maps,
//! inversion and a partial multiplication table) or from the built-in
//! [`constructions`]. Every constructor runs the axiom checks, so a value of
//! [`AlmostGroupoid`] or [`BrandtGroupoid`] is always a verified structure.
//!
//! ```
//! use amg_core::{constructions, FiniteGroupoid};
//!
//! let g = constructions::z6_example();
//! let p1 = g.element("p1").unwrap();
//! let c = g.centralizer(p1).unwrap();
//! assert_eq!(g.names_of(&c), ["u5", "p1", "p9"]);
//! ```

pub mod almost;
pub mod brandt;
pub mod constructions;
pub mod element;
pub mod error;
pub mod format;
pub mod morphism;
pub mod report;
pub mod structure;
pub mod substructure;
pub mod table;

pub use almost::{verify_almost, AlmostGroupoid, AlmostParts};
pub use brandt::{verify_brandt, BrandtGroupoid, BrandtParts};
pub use constructions::FamilySpec;
pub use element::{ElementId, StructureId, MAX_ORDER};
pub use error::{Error, GroupDefect, Result};
pub use morphism::{
    check_groupoid_morphism, find_isomorphism, is_almost_morphism, is_brandt_morphism, is_isomorphism, MorphismCheck,
    MorphismPair, MorphismWitness,
};
pub use report::{Law, VerificationReport, Violation};
pub use structure::{ElementSubset, FiniteGroupoid};
pub use substructure::{SubgroupoidReport, SubgroupoidViolation};
pub use table::PartialTable;

/// Either kind of verified structure, as loaded from a file or built from a
/// family description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Almost(AlmostGroupoid),
    Brandt(BrandtGroupoid),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Almost,
    Brandt,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Almost => "almost",
            Kind::Brandt => "brandt",
        }
    }
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Almost(_) => Kind::Almost,
            Structure::Brandt(_) => Kind::Brandt,
        }
    }

    pub fn groupoid(&self) -> &dyn FiniteGroupoid {
        match self {
            Structure::Almost(g) => g,
            Structure::Brandt(b) => b,
        }
    }

    /// The axioms of this structure's kind, rechecked from its parts.
    pub fn verify(&self) -> VerificationReport {
        let report = match self {
            Structure::Almost(g) => verify_almost(&g.to_parts()),
            Structure::Brandt(b) => verify_brandt(&b.to_parts()),
        };
        report.expect("parts of a verified structure are well-shaped")
    }

    pub fn derived_identities(&self) -> VerificationReport {
        match self {
            Structure::Almost(g) => g.derived_identities(),
            Structure::Brandt(b) => b.derived_identities(),
        }
    }

    /// The Brandt presentation; almost groupoids get α = β = θ.
    pub fn to_brandt(&self) -> BrandtGroupoid {
        match self {
            Structure::Almost(g) => g.to_brandt(),
            Structure::Brandt(b) => b.clone(),
        }
    }
}

impl From<AlmostGroupoid> for Structure {
    fn from(g: AlmostGroupoid) -> Self {
        Structure::Almost(g)
    }
}

impl From<BrandtGroupoid> for Structure {
    fn from(b: BrandtGroupoid) -> Self {
        Structure::Brandt(b)
    }
}
