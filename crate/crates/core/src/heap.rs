//! Array-backed binary max-heap over job indices with a position index, so a
//! job can be deleted from the middle of its heap in `O(log n)`.
//!
//! Several heaps may share one position table as long as every job lives in
//! at most one of them at a time.

use std::cmp::Reverse;

use crate::model::Time;

pub type Key = (Time, Reverse<usize>);

#[derive(Clone, Debug, Default)]
pub struct MaxHeap {
    items: Vec<(Key, usize)>,
}

impl MaxHeap {
    pub fn new() -> Self {
        MaxHeap { items: Vec::new() }
    }

    /// Heap-orders an arbitrary array in linear time.
    pub fn build(items: Vec<(Key, usize)>, pos: &mut [usize]) -> Self {
        let mut heap = MaxHeap { items };
        for (i, &(_, j)) in heap.items.iter().enumerate() {
            pos[j] = i;
        }
        for i in (0..heap.items.len() / 2).rev() {
            heap.heapify(i, pos);
        }
        heap
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn peek(&self) -> Option<(Key, usize)> {
        self.items.first().copied()
    }

    /// Unordered view of the members.
    pub fn jobs(&self) -> impl Iterator<Item = usize> + '_ {
        self.items.iter().map(|&(_, j)| j)
    }

    pub fn entries(&self) -> &[(Key, usize)] {
        &self.items
    }

    pub fn insert(&mut self, key: Key, job: usize, pos: &mut [usize]) {
        self.items.push((key, job));
        let last = self.items.len() - 1;
        pos[job] = last;
        self.sift_up(last, pos);
    }

    pub fn extract_max(&mut self, pos: &mut [usize]) -> Option<(Key, usize)> {
        if self.items.is_empty() {
            return None;
        }
        Some(self.remove_at(0, pos))
    }

    /// Deletes `job`, which must be a member.
    pub fn remove(&mut self, job: usize, pos: &mut [usize]) -> Key {
        let at = pos[job];
        debug_assert_eq!(self.items[at].1, job, "job {job} is not in this heap");
        self.remove_at(at, pos).0
    }

    fn remove_at(&mut self, at: usize, pos: &mut [usize]) -> (Key, usize) {
        let last = self.items.len() - 1;
        self.swap(at, last, pos);
        let out = self.items.pop().expect("nonempty");
        if at < self.items.len() {
            self.heapify(at, pos);
            self.sift_up(at, pos);
        }
        out
    }

    /// Restores the heap property below `i`.
    fn heapify(&mut self, mut i: usize, pos: &mut [usize]) {
        let len = self.items.len();
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut largest = i;
            if l < len && self.items[l].0 > self.items[largest].0 {
                largest = l;
            }
            if r < len && self.items[r].0 > self.items[largest].0 {
                largest = r;
            }
            if largest == i {
                return;
            }
            self.swap(i, largest, pos);
            i = largest;
        }
    }

    fn sift_up(&mut self, mut i: usize, pos: &mut [usize]) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.items[parent].0 >= self.items[i].0 {
                return;
            }
            self.swap(i, parent, pos);
            i = parent;
        }
    }

    fn swap(&mut self, a: usize, b: usize, pos: &mut [usize]) {
        self.items.swap(a, b);
        pos[self.items[a].1] = a;
        pos[self.items[b].1] = b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn key(p: Time, j: usize) -> Key {
        (p, Reverse(j))
    }

    #[test]
    fn extract_in_key_order() {
        let ps = [5, 5, 3, 9, 1];
        let mut pos = vec![0; ps.len()];
        let mut h = MaxHeap::build(ps.iter().enumerate().map(|(j, &p)| (key(p, j), j)).collect(), &mut pos);
        let order: Vec<usize> = std::iter::from_fn(|| h.extract_max(&mut pos).map(|e| e.1)).collect();
        assert_eq!(order, vec![3, 0, 1, 2, 4]);
    }

    proptest! {
        #[test]
        fn remove_keeps_heap_valid(ps in proptest::collection::vec(1i64..20, 1..40), picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..20)) {
            let n = ps.len();
            let mut pos = vec![0; n];
            let mut h = MaxHeap::new();
            for (j, &p) in ps.iter().enumerate() {
                h.insert(key(p, j), j, &mut pos);
            }
            let mut alive: Vec<usize> = (0..n).collect();
            for pick in picks {
                if alive.is_empty() { break; }
                let j = alive.remove(pick.index(alive.len()));
                h.remove(j, &mut pos);
            }
            let mut expected: Vec<usize> = alive.clone();
            expected.sort_by_key(|&j| std::cmp::Reverse(key(ps[j], j)));
            let got: Vec<usize> = std::iter::from_fn(|| h.extract_max(&mut pos).map(|e| e.1)).collect();
            prop_assert_eq!(got, expected);
        }
    }
}
