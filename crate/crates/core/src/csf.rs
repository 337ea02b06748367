//! Candidate set family: `n` disjoint components covering the job set, where
//! membership in component `i` means the job may not be placed in any batch
//! slot after `i`. Jobs only ever move to lower components.

use std::fmt;

use thiserror::Error;

use crate::heap::{Key, MaxHeap};
use crate::model::{Instance, JobId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsfError {
    #[error("job {job} cannot move from component {from} to {to}: moves must go strictly left")]
    NotLeftward { job: usize, from: usize, to: usize },
    #[error("components do not partition the job set")]
    NotPartition,
}

#[derive(Clone, Debug)]
pub struct Csf {
    components: Vec<MaxHeap>,
    ordinal: Vec<usize>,
    pos: Vec<usize>,
    keys: Vec<Key>,
    moves: u64,
}

impl Csf {
    /// Every job in the last component.
    pub fn initial(instance: &Instance) -> Self {
        let n = instance.n();
        let keys: Vec<Key> = (0..n).map(|j| instance.key(j)).collect();
        let mut pos = vec![0; n];
        let mut components = vec![MaxHeap::new(); n];
        components[n - 1] = MaxHeap::build(keys.iter().copied().zip(0..n).collect(), &mut pos);
        Csf { components, ordinal: vec![n - 1; n], pos, keys, moves: 0 }
    }

    /// Builds a family from explicit components (index `i` is component `i + 1`).
    pub fn from_components(instance: &Instance, members: &[Vec<JobId>]) -> Result<Self, CsfError> {
        let n = instance.n();
        if members.len() != n {
            return Err(CsfError::NotPartition);
        }
        let keys: Vec<Key> = (0..n).map(|j| instance.key(j)).collect();
        let mut ordinal = vec![usize::MAX; n];
        for (i, comp) in members.iter().enumerate() {
            for j in comp {
                match ordinal.get_mut(j.index()) {
                    Some(o) if *o == usize::MAX => *o = i,
                    _ => return Err(CsfError::NotPartition),
                }
            }
        }
        if ordinal.contains(&usize::MAX) {
            return Err(CsfError::NotPartition);
        }
        let mut pos = vec![0; n];
        let components = members
            .iter()
            .map(|comp| {
                MaxHeap::build(comp.iter().map(|j| (keys[j.index()], j.index())).collect(), &mut pos)
            })
            .collect();
        Ok(Csf { components, ordinal, pos, keys, moves: 0 })
    }

    pub fn n(&self) -> usize {
        self.ordinal.len()
    }

    /// Component index currently holding `job`.
    #[inline]
    pub fn ordinal(&self, job: usize) -> usize {
        self.ordinal[job]
    }

    pub fn ordinals(&self) -> &[usize] {
        &self.ordinal
    }

    pub fn component_len(&self, i: usize) -> usize {
        self.components[i].len()
    }

    pub fn component(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.components[i].jobs()
    }

    pub(crate) fn component_entries(&self, i: usize) -> &[(Key, usize)] {
        self.components[i].entries()
    }

    /// Members of every component, each sorted by id.
    pub fn components(&self) -> Vec<Vec<JobId>> {
        self.components
            .iter()
            .map(|h| {
                let mut v: Vec<JobId> = h.jobs().map(JobId).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Total relocations since construction.
    pub fn move_count(&self) -> u64 {
        self.moves
    }

    pub fn try_move(&mut self, job: usize, to: usize) -> Result<(), CsfError> {
        let from = self.ordinal[job];
        if to >= from {
            return Err(CsfError::NotLeftward { job: job + 1, from: from + 1, to: to + 1 });
        }
        let key = self.components[from].remove(job, &mut self.pos);
        self.components[to].insert(key, job, &mut self.pos);
        self.ordinal[job] = to;
        self.moves += 1;
        Ok(())
    }

    /// Relocates `job` to component `to`.
    ///
    /// Panics unless `to` is strictly left of the job's current component.
    pub fn move_job(&mut self, job: usize, to: usize) {
        if let Err(e) = self.try_move(job, to) {
            panic!("{e}");
        }
    }

    /// Whether the first `i` components together hold at most `i * b` jobs, for every `i`.
    pub fn prefix_capacity_ok(&self, b: usize) -> bool {
        let mut total = 0;
        self.components.iter().enumerate().all(|(i, c)| {
            total += c.len();
            total <= (i + 1) * b
        })
    }

    /// Highest-key job across the given components, without removing it.
    pub fn peek_largest(&self, from: impl IntoIterator<Item = usize>) -> Option<JobId> {
        from.into_iter().filter_map(|i| self.components[i].peek()).max().map(|(_, j)| JobId(j))
    }

    pub fn key(&self, job: usize) -> Key {
        self.keys[job]
    }
}

/// One line per nonempty component: `i: [id(p), ...]`, highest key first.
impl fmt::Display for Csf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, comp) in self.components.iter().enumerate() {
            if comp.is_empty() {
                continue;
            }
            let mut entries = comp.entries().to_vec();
            entries.sort_unstable_by(|a, b| b.cmp(a));
            let body: Vec<String> =
                entries.iter().map(|&((p, _), j)| format!("{}({p})", j + 1)).collect();
            writeln!(f, "{}: [{}]", i + 1, body.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Capacity, CostSpec, Job};
    use proptest::prelude::*;

    fn instance(ps: &[i64]) -> Instance {
        let jobs = ps
            .iter()
            .enumerate()
            .map(|(j, &p)| Job { id: JobId(j), p, cost: CostSpec::Lateness { due: 0 } })
            .collect();
        Instance::new(jobs, 1, Capacity::Unbounded, vec![]).unwrap()
    }

    fn ids(v: &[usize]) -> Vec<JobId> {
        v.iter().map(|&j| JobId(j)).collect()
    }

    #[test]
    fn initial_families() {
        assert_eq!(Csf::initial(&instance(&[1])).components(), vec![ids(&[0])]);
        assert_eq!(Csf::initial(&instance(&[1, 2])).components(), vec![vec![], ids(&[0, 1])]);
        assert_eq!(
            Csf::initial(&instance(&[1, 2, 3])).components(),
            vec![vec![], vec![], ids(&[0, 1, 2])]
        );
    }

    #[test]
    fn moves_go_left_and_count() {
        let inst = instance(&[1, 2, 3]);
        let mut f = Csf::initial(&inst);
        f.move_job(0, 0);
        assert_eq!((f.ordinal(0), f.move_count()), (0, 1));
        assert_eq!(
            f.try_move(0, 0),
            Err(CsfError::NotLeftward { job: 1, from: 1, to: 1 })
        );
        assert!(f.try_move(1, 2).is_err());
        f.move_job(1, 1);
        f.move_job(1, 0);
        assert_eq!(f.move_count(), 3);
        assert_eq!(f.components(), vec![ids(&[0, 1]), vec![], ids(&[2])]);
    }

    #[test]
    #[should_panic(expected = "strictly left")]
    fn move_to_same_index_panics() {
        let inst = instance(&[1, 2]);
        let mut f = Csf::initial(&inst);
        f.move_job(0, 1);
    }

    #[test]
    fn prefix_capacity() {
        let inst = instance(&[1, 1, 1]);
        let f = Csf::from_components(&inst, &[ids(&[0, 1]), vec![], ids(&[2])]).unwrap();
        assert!(!f.prefix_capacity_ok(1));
        assert!(f.prefix_capacity_ok(2));
        assert!(Csf::initial(&inst).prefix_capacity_ok(1));
    }

    #[test]
    fn peek_largest_tie_and_empty() {
        let tie = Csf::initial(&instance(&[5, 5]));
        assert_eq!(tie.peek_largest([1]), Some(JobId(0)));
        assert_eq!(tie.peek_largest([0]), None);
        let f = Csf::initial(&instance(&[3, 9, 2]));
        assert_eq!(f.peek_largest(0..3), Some(JobId(1)));
    }

    #[test]
    fn dump_format() {
        let inst = instance(&[3, 9, 2]);
        let mut f = Csf::initial(&inst);
        f.move_job(2, 0);
        assert_eq!(f.to_string(), "1: [3(2)]\n3: [2(9), 1(3)]\n");
    }

    #[test]
    fn rejects_non_partition() {
        let inst = instance(&[1, 1]);
        assert_eq!(
            Csf::from_components(&inst, &[ids(&[0]), ids(&[0])]).unwrap_err(),
            CsfError::NotPartition
        );
    }

    proptest! {
        #[test]
        fn random_moves_keep_partition(ps in proptest::collection::vec(1i64..9, 1..12), steps in proptest::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 0..60)) {
            let inst = instance(&ps);
            let n = ps.len();
            let mut f = Csf::initial(&inst);
            let mut made = 0u64;
            for (job, to) in steps {
                let j = job.index(n);
                let o = f.ordinal(j);
                if o == 0 { continue; }
                f.move_job(j, to.index(o));
                made += 1;
            }
            let comps = f.components();
            let mut all: Vec<JobId> = comps.iter().flatten().copied().collect();
            all.sort();
            prop_assert_eq!(all, (0..n).map(JobId).collect::<Vec<_>>());
            for (i, c) in comps.iter().enumerate() {
                for j in c { prop_assert_eq!(f.ordinal(j.index()), i); }
            }
            prop_assert_eq!(f.move_count(), made);
            prop_assert!(f.move_count() <= (n * n.saturating_sub(1)) as u64);
        }
    }
}
