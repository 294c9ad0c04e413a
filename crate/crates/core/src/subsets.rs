//! Bitmask helpers for vertex subsets of small complete graphs.
//!
//! A subset of `0..n` (with `n <= 32`) is a `u32` whose bit `v` is set when
//! vertex `v` belongs to the subset.

/// Binomial coefficient with the convention `C(n, k) = 0` whenever `k < 0`,
/// `n < 0` or `n < k`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Vertices of `mask` in increasing order.
pub fn members(mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        out.push(v);
        rest &= rest - 1;
    }
    out
}

pub fn mask_of(vertices: &[usize]) -> u32 {
    vertices.iter().fold(0u32, |acc, &v| acc | (1 << v))
}

/// Mask with the lowest `n` bits set.
pub fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Iterates the `k`-element subsets of `0..n` as masks, in increasing
/// numeric order (Gosper's hack).
#[derive(Debug, Clone)]
pub struct Combinations {
    next: Option<u32>,
    limit: u64,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n < 32, "at most 31 vertices are supported");
        let next = if k > n {
            None
        } else if k == 0 {
            Some(0)
        } else {
            Some(full_mask(k))
        };
        Combinations {
            next,
            limit: 1u64 << n,
        }
    }
}

impl Iterator for Combinations {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let current = self.next?;
        self.next = if current == 0 {
            None
        } else {
            let c = current as u64;
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            let candidate = (((ripple ^ c) >> 2) / low) | ripple;
            (candidate < self.limit).then_some(candidate as u32)
        };
        Some(current)
    }
}

/// `k`-element subsets of `0..n`, each as a sorted vertex list, in
/// lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Combinations::new(n, k).map(members).collect();
    out.sort();
    out
}

/// In-place sum over subsets: afterwards `values[s] = sum of the original
/// values[t] over all t ⊆ s`. `values.len()` must be `2^n`.
pub fn subset_sum_transform<T>(values: &mut [T], n: usize)
where
    T: Copy + std::ops::AddAssign,
{
    assert_eq!(values.len(), 1usize << n);
    for bit in 0..n {
        let step = 1usize << bit;
        for s in 0..values.len() {
            if s & step != 0 {
                let lower = values[s ^ step];
                values[s] += lower;
            }
        }
    }
}

/// Orders masks by size first and then lexicographically by sorted members.
pub fn canonical_cmp(a: u32, b: u32) -> std::cmp::Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| members(a).cmp(&members(b)))
}
