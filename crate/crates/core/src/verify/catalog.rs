use serde::Serialize;

use crate::decompositions::Flag;

/// A named ring with the flag values it is asserted to have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    /// Canonical DSL text.
    pub expr: String,
    pub expected: Vec<(Flag, bool)>,
    pub source: String,
}

impl CatalogEntry {
    fn new(id: &str, expr: &str, expected: &[(Flag, bool)], source: &str) -> Self {
        CatalogEntry {
            id: id.into(),
            expr: expr.into(),
            expected: expected.to_vec(),
            source: source.into(),
        }
    }

    /// `GWNC=+ WNC=-` style summary.
    pub fn expected_text(&self) -> String {
        self.expected
            .iter()
            .map(|(f, v)| format!("{}={}", f.short(), if *v { '+' } else { '-' }))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Rings exercised by every catalog-wide check; the first eleven carry
/// asserted flags, the rest are fillers.
pub fn catalog() -> Vec<CatalogEntry> {
    use Flag::*;
    let e = CatalogEntry::new;
    let mut v = vec![
        e("EX-2.1-01", "M(2,Z(2))", &[(Gsnc, true), (StronglyNilClean, false)],
          "2×2 matrices over Z2: non-units strongly nil-clean, ring not strongly nil-clean"),
        e("EX-2.1-03", "Z(3)", &[(Gnc, true), (NilClean, false)],
          "Z3 is GNC but not nil-clean"),
        e("EX-2.1-04", "Z(6)", &[(Clean, true), (Gnc, false), (WeaklyNilClean, true)],
          "Z6 is clean and weakly nil-clean but not GNC"),
        e("EX-2.1-05", "Z(5)", &[(Gwnc, true), (WeaklyNilClean, false)],
          "Z5 is GWNC but not weakly nil-clean"),
        e("EX-2.1-06", "M(2,Z(6))", &[(WeaklyClean, true), (Gwnc, false)],
          "M2(Z6) is weakly clean but not GWNC"),
        e("EX-2.1-09", "(M(2,Z(2)) x M(2,Z(2)))", &[(Gnc, true), (Gsnc, false)],
          "M2(Z2)×M2(Z2) is GNC but not GSNC"),
        e("EX-2.1-10", "M(2,Z(3))", &[(Gwnc, true), (Gnc, false)],
          "M2(Z3) is GWNC but not GNC"),
        e("EX-2.22-01", "(Z(3) x Z(3))", &[(Gwnc, true)],
          "Z3×Z3 is GWNC"),
        e("EX-2.22-02", "(Z(6) x Z(6))", &[(Gwnc, false)],
          "Z6×Z6 is not GWNC although Z6 is weakly nil-clean"),
        e("EX-2.26-01", "T(2,Z(3))", &[(Gwnc, true)],
          "T2(Z3) is GWNC"),
        e("EX-2.26-02", "T(2,Z(6))", &[(Gwnc, false)],
          "T2(Z6) is not GWNC"),
    ];
    let fillers = [
        "Z(2)",
        "Z(4)",
        "Z(8)",
        "Z(9)",
        "Z(12)",
        "GF(2,2)",
        "GF(3,2)",
        "TE(Z(2))",
        "TE(Z(3))",
        "PQ(Z(2),[0,0,1])",
        "GR(Z(2),C(2))",
        "GR(Z(2),C(3))",
        "GR(Z(3),C(3))",
        "GR(Z(4),C(2))",
        "FM(2,2,Z(4))",
    ];
    v.extend(
        fillers
            .iter()
            .enumerate()
            .map(|(i, x)| e(&format!("FILL-{:02}", i + 1), x, &[], "filler")),
    );
    v
}
