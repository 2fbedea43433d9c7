use rand::seq::SliceRandom;
use rand::Rng;

use crate::placement::Layout;

/// Exchange the components at positions `i` and `j`.
pub fn swap_move(layout: &Layout, i: usize, j: usize) -> Layout {
    let mut next = layout.clone();
    next.order_mut().swap(i, j);
    next
}

/// Remove the component at position `from` and reinsert it at `to` of the shortened order.
pub fn shift_move(layout: &Layout, from: usize, to: usize) -> Layout {
    let mut next = layout.clone();
    let order = next.order_mut();
    let item = order.remove(from);
    order.insert(to, item);
    next
}

/// Random neighbor: with probability `swap_probability` swap two distinct positions,
/// otherwise shift one component to a new position.
///
/// Draws: one `f64` for the move kind, then two position indices.
pub fn neighbor<R: Rng + ?Sized>(layout: &Layout, swap_probability: f64, rng: &mut R) -> Layout {
    let n = layout.len();
    if n < 2 {
        return layout.clone();
    }
    if rng.gen::<f64>() < swap_probability {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        swap_move(layout, i, j)
    } else {
        let from = rng.gen_range(0..n);
        let to = rng.gen_range(0..n);
        shift_move(layout, from, to)
    }
}

/// Uniformly random permutation of `1..=n` (Fisher-Yates).
pub fn random_layout<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Layout {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    Layout::from_vec_unchecked(order)
}

/// Maps a layout from an edited component set onto `1..=n`: indices that no longer
/// exist are dropped, duplicates keep their first position, and missing ones are
/// appended in ascending order.
pub fn repair_layout(previous: &[usize], n: usize) -> Layout {
    let mut seen = vec![false; n + 1];
    let mut order = Vec::with_capacity(n);
    for &i in previous {
        if (1..=n).contains(&i) && !seen[i] {
            seen[i] = true;
            order.push(i);
        }
    }
    order.extend((1..=n).filter(|&i| !seen[i]));
    Layout::from_vec_unchecked(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_element_swap() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l = Layout::identity(2);
        assert_eq!(neighbor(&l, 1.0, &mut rng).order(), &[2, 1]);
        assert_eq!(swap_move(&l, 0, 1).order(), &[2, 1]);
    }

    #[test]
    fn shift_to_end() {
        assert_eq!(shift_move(&Layout::identity(3), 0, 2).order(), &[2, 3, 1]);
    }

    #[test]
    fn single_component_is_fixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(neighbor(&Layout::identity(1), 0.5, &mut rng), Layout::identity(1));
    }

    #[test]
    fn many_moves_stay_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut l = random_layout(15, &mut rng);
        for _ in 0..100_000 {
            l = neighbor(&l, 0.8, &mut rng);
            let mut sorted = l.order().to_vec();
            sorted.sort_unstable();
            assert_eq!(sorted, (1..=15).collect::<Vec<_>>());
        }
    }

    #[test]
    fn repair_drops_and_appends() {
        assert_eq!(repair_layout(&[3, 9, 1, 3], 4).order(), &[3, 1, 2, 4]);
        assert_eq!(repair_layout(&[2, 1], 2).order(), &[2, 1]);
    }
}
