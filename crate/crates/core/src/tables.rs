//! Collision tables regenerated from [`collide`]: the two `beta (type)`
//! grids of the `J = 1` and `J = 0` families, and Miranda's table of
//! exceptional fiber types with good/bad markers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::collision::{collide, CollisionClass, CollisionError, CollisionInput};
use crate::kodaira::{FiberKind, FiberType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub label: String,
    pub class: CollisionClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionTable {
    pub title: String,
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub cells: Vec<Vec<Option<TableEntry>>>,
    /// Whether labels carry a good/bad marker when rendered.
    pub marked: bool,
}

impl CollisionTable {
    pub fn cell(&self, row: &str, column: &str) -> Option<&TableEntry> {
        let r = self.rows.iter().position(|x| x == row)?;
        let c = self.columns.iter().position(|x| x == column)?;
        self.cells[r][c].as_ref()
    }

    /// Positional lookup; labels repeat in Miranda's table (`I0*` belongs
    /// to both families).
    pub fn cell_at(&self, row: usize, column: usize) -> Option<&TableEntry> {
        self.cells.get(row)?.get(column)?.as_ref()
    }
}

fn family_table(title: &str, ascending: &[FiberKind]) -> Result<CollisionTable, CollisionError> {
    let columns: Vec<FiberType> = ascending.iter().copied().map(FiberType::new).collect();
    let rows: Vec<FiberType> = columns.iter().rev().copied().collect();
    let mut cells = Vec::new();
    for row in &rows {
        let mut line = Vec::new();
        for col in &columns {
            let o = collide(&CollisionInput::section(*col, *row))?;
            line.push(Some(TableEntry {
                label: format!("{} ({})", o.beta, o.gamma_type),
                class: o.class(),
            }));
        }
        cells.push(line);
    }
    Ok(CollisionTable {
        title: title.to_string(),
        rows: rows.iter().map(|t| format!("{} ({})", crate::kodaira::coefficient_a(*t), t)).collect(),
        columns: columns
            .iter()
            .map(|t| format!("{} ({})", crate::kodaira::coefficient_a(*t), t))
            .collect(),
        cells,
        marked: false,
    })
}

/// `beta (type)` for the `J = 1` family `III, I0*, III*`; columns by
/// ascending `a_l`, rows by descending `a_m`.
pub fn cor46_j_one() -> Result<CollisionTable, CollisionError> {
    use FiberKind::*;
    family_table("J = 1 family: beta (type on Gamma)", &[III, IStar(0), IIIStar])
}

/// `beta (type)` for the `J = 0` family `II, IV, I0*, IV*, II*`.
pub fn cor46_j_zero() -> Result<CollisionTable, CollisionError> {
    use FiberKind::*;
    family_table(
        "J = 0 family: beta (type on Gamma)",
        &[II, IV, IStar(0), IVStar, IIStar],
    )
}

#[derive(Clone, Copy)]
enum Param {
    I,
    IStar,
}

impl Param {
    fn at(self, b: u32) -> FiberType {
        match self {
            Param::I => FiberType::new(FiberKind::I(b)),
            Param::IStar => FiberType::new(FiberKind::IStar(b)),
        }
    }
}

/// Fits the exceptional type of a parametric collision as an integer
/// linear form in the two parameters and renders it, e.g. `I*_{b+c}`.
fn symbolic_entry(
    row: Param,
    row_name: &str,
    col: Param,
    col_name: &str,
) -> Result<TableEntry, CollisionError> {
    let eval = |p: u32, q: u32| -> Result<(FiberType, CollisionClass), CollisionError> {
        let o = collide(&CollisionInput::section(row.at(p), col.at(q)))?;
        Ok((o.gamma_type, o.class()))
    };
    let param = |t: FiberType| -> (bool, i64) {
        match t.kind() {
            FiberKind::IStar(b) => (true, b as i64),
            FiberKind::I(b) => (false, b as i64),
            _ => unreachable!("pole types compose to pole types"),
        }
    };
    let (t00, class) = eval(0, 0)?;
    let (star, k0) = param(t00);
    let k1 = param(eval(1, 0)?.0).1 - k0;
    let k2 = param(eval(0, 1)?.0).1 - k0;
    for (p, q) in [(2, 3), (5, 1), (4, 4)] {
        let (t, c) = eval(p, q)?;
        let (s, v) = param(t);
        assert!(
            s == star && v == k0 + k1 * p as i64 + k2 * q as i64 && c == class,
            "parametric collision is not linear in its parameters"
        );
    }
    let mut terms = Vec::new();
    for (k, name) in [(k1, row_name), (k2, col_name)] {
        match k {
            0 => {}
            1 => terms.push(name.to_string()),
            _ => terms.push(format!("{k}{name}")),
        }
    }
    if k0 != 0 || terms.is_empty() {
        terms.push(k0.to_string());
    }
    let sub = terms.join("+");
    let label = if star { format!("I*_{{{sub}}}") } else { format!("I_{{{sub}}}") };
    Ok(TableEntry { label, class })
}

/// Miranda's collision table: the type over `Gamma` for each collision,
/// marked good or bad.
pub fn miranda_table() -> Result<CollisionTable, CollisionError> {
    use FiberKind::*;
    let j0_rows = [IIStar, IVStar, IStar(0), IV, II];
    let j0_cols = [II, IV, IStar(0), IVStar, IIStar];
    let j1_rows = [IIIStar, IStar(0), III];
    let j1_cols = [III, IStar(0), IIIStar];

    let mut rows: Vec<String> = j0_rows.iter().chain(&j1_rows).map(|k| k.to_string()).collect();
    rows.extend(["I*_b".to_string(), "I_a".to_string()]);
    let mut columns: Vec<String> = j0_cols.iter().chain(&j1_cols).map(|k| k.to_string()).collect();
    columns.extend(["I_c".to_string(), "I*_d".to_string()]);

    let n_cols = columns.len();
    let mut cells = vec![vec![None; n_cols]; rows.len()];
    let entry = |l: FiberKind, r: FiberKind| -> Result<TableEntry, CollisionError> {
        let o = collide(&CollisionInput::section(l, r))?;
        Ok(TableEntry {
            label: o.gamma_type.to_string(),
            class: o.class(),
        })
    };
    // each unordered pair once: the upper-left triangle of each block
    for (i, r) in j0_rows.iter().enumerate() {
        for (j, c) in j0_cols.iter().enumerate() {
            if i + j < j0_rows.len() {
                cells[i][j] = Some(entry(*r, *c)?);
            }
        }
    }
    for (i, r) in j1_rows.iter().enumerate() {
        for (j, c) in j1_cols.iter().enumerate() {
            if i + j < j1_rows.len() {
                cells[j0_rows.len() + i][j0_cols.len() + j] = Some(entry(*r, *c)?);
            }
        }
    }
    let pr = j0_rows.len() + j1_rows.len();
    let pc = j0_cols.len() + j1_cols.len();
    cells[pr][pc] = Some(symbolic_entry(Param::IStar, "b", Param::I, "c")?);
    cells[pr][pc + 1] = Some(symbolic_entry(Param::IStar, "b", Param::IStar, "d")?);
    cells[pr + 1][pc] = Some(symbolic_entry(Param::I, "a", Param::I, "c")?);
    cells[pr + 1][pc + 1] = Some(symbolic_entry(Param::I, "a", Param::IStar, "d")?);

    Ok(CollisionTable {
        title: "Type on Gamma after blowing up a collision (• = good)".to_string(),
        rows,
        columns,
        cells,
        marked: true,
    })
}

impl fmt::Display for CollisionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = |e: &Option<TableEntry>| -> String {
            match e {
                None => String::new(),
                Some(e) if self.marked && e.class == CollisionClass::Good => format!("•{}", e.label),
                Some(e) => e.label.clone(),
            }
        };
        let head_width = self.rows.iter().map(|r| r.chars().count()).max().unwrap_or(0);
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for line in &self.cells {
            for (w, e) in widths.iter_mut().zip(line) {
                *w = (*w).max(text(e).chars().count());
            }
        }
        writeln!(f, "{}", self.title)?;
        write!(f, "{:head_width$}", "")?;
        for (c, w) in self.columns.iter().zip(&widths) {
            write!(f, " | {c:w$}")?;
        }
        writeln!(f)?;
        for (r, line) in self.rows.iter().zip(&self.cells) {
            write!(f, "{r:head_width$}")?;
            for (e, w) in line.iter().zip(&widths) {
                write!(f, " | {:w$}", text(e))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_tables_are_full_grids() {
        let t1 = cor46_j_one().unwrap();
        let t0 = cor46_j_zero().unwrap();
        let filled = |t: &CollisionTable| t.cells.iter().flatten().filter(|c| c.is_some()).count();
        assert_eq!(filled(&t1) + filled(&t0), 34);
        assert_eq!(t0.cell("5/6 (II*)", "1/3 (IV)").unwrap().label, "7/6 (II)");
        assert_eq!(t1.cell("1/2 (I0*)", "1/4 (III)").unwrap().label, "3/4 (III*)");
    }

    #[test]
    fn parametric_labels() {
        let t = miranda_table().unwrap();
        let e = t.cell("I*_b", "I_c").unwrap();
        assert_eq!((e.label.as_str(), e.class), ("I*_{b+c}", CollisionClass::Good));
        let e = t.cell("I*_b", "I*_d").unwrap();
        assert_eq!((e.label.as_str(), e.class), ("I_{b+d}", CollisionClass::Bad));
        assert_eq!(t.cell("I_a", "I_c").unwrap().label, "I_{a+c}");
        assert_eq!(t.cell("I_a", "I*_d").unwrap().label, "I*_{a+d}");
    }

    #[test]
    fn triangle_shape() {
        let t = miranda_table().unwrap();
        assert!(t.cell("II", "IV").is_none());
        assert_eq!(t.cell("II", "II").unwrap().label, "IV");
        assert_eq!(t.cell("II*", "II*").unwrap().label, "IV*");
        let rendered = t.to_string();
        assert!(rendered.contains("•II*"));
    }
}
