//! Shelf packing of a component permutation onto rail rows.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CabinetSpec, Component};

/// A permutation of component indices `1..=n`; the search-space point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Layout(Vec<usize>);

impl Layout {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n + 1];
        for &i in &order {
            if i == 0 || i > n || seen[i] {
                return Err(Error::InvalidLayout(n));
            }
            seen[i] = true;
        }
        Ok(Self(order))
    }

    /// `[1, 2, ..., n]`.
    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub(crate) fn from_vec_unchecked(order: Vec<usize>) -> Self {
        debug_assert!(Layout::new(order.clone()).is_ok());
        Self(order)
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub(crate) fn order_mut(&mut self) -> &mut Vec<usize> {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PlacedComponent {
    pub index: usize,
    pub x_mm: f64,
    /// Top edge, measured downward from the cabinet top.
    pub y_mm: f64,
    pub width_mm: f64,
    pub height_mm: f64,
    pub row: usize,
}

impl PlacedComponent {
    pub fn center(&self) -> (f64, f64) {
        (self.x_mm + self.width_mm / 2.0, self.y_mm + self.height_mm / 2.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Row {
    pub y_mm: f64,
    pub height_mm: f64,
}

/// Physical coordinates of every component. `components[i]` holds index `i + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Placement {
    pub components: Vec<PlacedComponent>,
    pub rows: Vec<Row>,
    pub total_height_mm: f64,
}

impl Placement {
    pub fn get(&self, index: usize) -> Option<&PlacedComponent> {
        index.checked_sub(1).and_then(|i| self.components.get(i))
    }

    /// Component indices of one row, left to right.
    pub fn row_members(&self, row: usize) -> Vec<usize> {
        let mut members: Vec<&PlacedComponent> = self.components.iter().filter(|p| p.row == row).collect();
        members.sort_by(|a, b| a.x_mm.total_cmp(&b.x_mm));
        members.into_iter().map(|p| p.index).collect()
    }
}

/// Greedy shelf packing: components are laid left to right in layout order and a new
/// row is opened when the next one would cross the usable width. Row height is the
/// tallest member; every member's top sits on the row top.
///
/// `components` must be validated (ordered by index) and `layout` a permutation of them.
pub fn pack(layout: &Layout, components: &[Component], cabinet: &CabinetSpec) -> Result<Placement> {
    if layout.len() != components.len() {
        return Err(Error::InvalidLayout(components.len()));
    }
    let usable = cabinet.usable_width_mm;
    let mut placed = vec![
        PlacedComponent {
            index: 0,
            x_mm: 0.0,
            y_mm: 0.0,
            width_mm: 0.0,
            height_mm: 0.0,
            row: 0,
        };
        components.len()
    ];
    let mut rows: Vec<Row> = Vec::new();
    let mut cursor_x = 0.0;
    let mut row_top = 0.0;
    let mut row_height: f64 = 0.0;
    let mut row = 0;

    for (pos, &index) in layout.order().iter().enumerate() {
        let c = &components[index - 1];
        if c.width_mm > usable {
            return Err(Error::ComponentTooWide {
                index,
                width_mm: c.width_mm,
                usable_width_mm: usable,
            });
        }
        if pos > 0 && cursor_x + c.width_mm > usable {
            rows.push(Row {
                y_mm: row_top,
                height_mm: row_height,
            });
            row_top += row_height + cabinet.row_gap_mm;
            row += 1;
            cursor_x = 0.0;
            row_height = 0.0;
        }
        placed[index - 1] = PlacedComponent {
            index,
            x_mm: cursor_x,
            y_mm: row_top,
            width_mm: c.width_mm,
            height_mm: c.height_mm,
            row,
        };
        cursor_x += c.width_mm;
        row_height = row_height.max(c.height_mm);
    }
    rows.push(Row {
        y_mm: row_top,
        height_mm: row_height,
    });

    Ok(Placement {
        components: placed,
        rows,
        total_height_mm: row_top + row_height,
    })
}

pub fn component_center(placement: &Placement, index: usize) -> Result<(f64, f64)> {
    placement.get(index).map(PlacedComponent::center).ok_or(Error::UnknownIndex(index))
}

/// Size of the permutation search space, `n!`.
pub fn total_configurations(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn abc() -> (Vec<Component>, CabinetSpec) {
        (
            vec![
                Component::new(1, "A", 100.0, 100.0, 1.0),
                Component::new(2, "B", 200.0, 100.0, 1.0),
                Component::new(3, "C", 150.0, 50.0, 1.0),
            ],
            CabinetSpec::new("abc", 300.0, 0.0),
        )
    }

    fn xy(p: &Placement, i: usize) -> (f64, f64, usize) {
        let c = p.get(i).unwrap();
        (c.x_mm, c.y_mm, c.row)
    }

    #[test]
    fn packs_abc_in_order() {
        let (c, cab) = abc();
        let p = pack(&Layout::new(vec![1, 2, 3]).unwrap(), &c, &cab).unwrap();
        assert_eq!(xy(&p, 1), (0.0, 0.0, 0));
        // B ends exactly at the usable width and stays in row 0.
        assert_eq!(xy(&p, 2), (100.0, 0.0, 0));
        assert_eq!(xy(&p, 3), (0.0, 100.0, 1));
        assert_eq!(p.total_height_mm, 150.0);
    }

    #[test]
    fn packs_bca() {
        // B fills 0..200; C would end at 350 > 300 so it opens row 1; A then fits beside C.
        let (c, cab) = abc();
        let p = pack(&Layout::new(vec![2, 3, 1]).unwrap(), &c, &cab).unwrap();
        assert_eq!(xy(&p, 2), (0.0, 0.0, 0));
        assert_eq!(xy(&p, 3), (0.0, 100.0, 1));
        assert_eq!(xy(&p, 1), (150.0, 100.0, 1));
        assert_eq!(p.rows, vec![Row { y_mm: 0.0, height_mm: 100.0 }, Row { y_mm: 100.0, height_mm: 100.0 }]);
    }

    #[test]
    fn single_component_at_origin() {
        let c = vec![Component::new(1, "x", 10.0, 20.0, 1.0)];
        let p = pack(&Layout::identity(1), &c, &CabinetSpec::default()).unwrap();
        assert_eq!(xy(&p, 1), (0.0, 0.0, 0));
        assert_eq!(p.rows.len(), 1);
    }

    #[test]
    fn rejects_too_wide() {
        let (mut c, cab) = abc();
        c[2].width_mm = 301.0;
        assert!(matches!(
            pack(&Layout::identity(3), &c, &cab),
            Err(Error::ComponentTooWide { index: 3, .. })
        ));
    }

    #[test]
    fn centers() {
        let (c, cab) = abc();
        let p = pack(&Layout::identity(3), &c, &cab).unwrap();
        assert_eq!(component_center(&p, 1).unwrap(), (50.0, 50.0));
        assert_eq!(component_center(&p, 3).unwrap(), (75.0, 125.0));
        assert_eq!(component_center(&p, 2).unwrap(), (200.0, 50.0));
        assert_eq!(component_center(&p, 4), Err(Error::UnknownIndex(4)));
    }

    #[test]
    fn factorials() {
        assert_eq!(total_configurations(1), BigUint::from(1u32));
        assert_eq!(total_configurations(3), BigUint::from(6u32));
        assert_eq!(total_configurations(14), BigUint::from(87_178_291_200u64));
    }

    #[test]
    fn layout_rejects_non_permutations() {
        assert!(Layout::new(vec![1, 1]).is_err());
        assert!(Layout::new(vec![0, 1]).is_err());
        assert!(Layout::new(vec![1, 3]).is_err());
        assert!(Layout::new(vec![2, 1]).is_ok());
    }

    fn check_geometry(p: &Placement, cab: &CabinetSpec, components: &[Component]) -> Result<(), TestCaseError> {
        for (k, r) in p.rows.iter().enumerate().skip(1) {
            let prev = p.rows[k - 1];
            prop_assert_eq!(r.y_mm, prev.y_mm + prev.height_mm + cab.row_gap_mm);
        }
        for a in &p.components {
            prop_assert!(a.x_mm >= 0.0 && a.x_mm + a.width_mm <= cab.usable_width_mm);
            prop_assert_eq!(a.y_mm, p.rows[a.row].y_mm);
            for b in &p.components {
                if a.index < b.index {
                    let overlap_x = a.x_mm < b.x_mm + b.width_mm && b.x_mm < a.x_mm + a.width_mm;
                    let overlap_y = a.y_mm < b.y_mm + b.height_mm && b.y_mm < a.y_mm + a.height_mm;
                    prop_assert!(!(overlap_x && overlap_y), "{} overlaps {}", a.index, b.index);
                }
            }
        }
        let area: f64 = components.iter().map(|c| c.width_mm * c.height_mm).sum();
        prop_assert!(area <= cab.usable_width_mm * p.total_height_mm + 1e-6);
        Ok(())
    }

    proptest! {
        #[test]
        fn packing_never_overlaps(seed in any::<u64>()) {
            let doc = datasets::sample15();
            let mut order: Vec<usize> = (1..=15).collect();
            order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let layout = Layout::new(order).unwrap();
            let p = pack(&layout, &doc.components, &doc.cabinet).unwrap();
            check_geometry(&p, &doc.cabinet, &doc.components)?;
            prop_assert_eq!(&pack(&layout, &doc.components, &doc.cabinet).unwrap(), &p);
        }

        #[test]
        fn reordering_within_a_row_keeps_other_rows(seed in any::<u64>()) {
            let doc = datasets::sample15();
            let mut order: Vec<usize> = (1..=15).collect();
            order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let layout = Layout::new(order.clone()).unwrap();
            let p = pack(&layout, &doc.components, &doc.cabinet).unwrap();
            let first_row = p.row_members(0);
            let k = first_row.len();
            order[..k].reverse();
            let q = pack(&Layout::new(order).unwrap(), &doc.components, &doc.cabinet).unwrap();
            for c in &p.components {
                if c.row != 0 {
                    prop_assert_eq!(q.get(c.index).unwrap().y_mm, c.y_mm);
                }
            }
        }
    }
}
