//! Minimum-makespan scheduling under a candidate set family and a max-cost
//! threshold, for a machine with batch capacity `b`.
//!
//! [`aux1`] is the reference procedure: rebuild the greedy schedule from the
//! family, push every violating job to the latest slot where it meets the
//! threshold, and repeat. [`BoundedSolverState::improaux1`] reaches the same
//! answer without rebuilding; it repairs the current schedule after each
//! one-slot relocation so that it always equals [`form_batches`] of the
//! current family. Its state survives between calls, which is what lets the
//! frontier driver tighten the threshold without starting over.

use crate::csf::Csf;
use crate::heap::MaxHeap;
use crate::model::{Instance, JobId, Schedule, Threshold, Time};
use crate::trace::{Event, Observer};

/// Greedy batches for `csf`, slot by slot from the last: each slot takes the
/// `b` highest-key jobs among those allowed there and not yet placed.
///
/// `None` when a slot comes out empty while a lower component still holds
/// jobs, or when jobs remain after the first slot.
pub fn form_batches(csf: &Csf, b: usize) -> Option<Vec<Vec<usize>>> {
    let n = csf.n();
    let lowest = (0..n).find(|&i| csf.component_len(i) > 0).unwrap_or(n);
    let mut pos = vec![0; n];
    let mut pool = MaxHeap::new();
    let mut slots = vec![Vec::new(); n];
    for i in (0..n).rev() {
        for &(key, j) in csf.component_entries(i) {
            pool.insert(key, j, &mut pos);
        }
        while slots[i].len() < b {
            match pool.extract_max(&mut pos) {
                Some((_, j)) => slots[i].push(j),
                None => break,
            }
        }
        if slots[i].is_empty() && lowest < i {
            return None;
        }
    }
    pool.is_empty().then_some(slots)
}

/// [`form_batches`] as a timetabled [`Schedule`].
pub fn form_schedule(instance: &Instance, csf: &Csf, b: usize) -> Option<Schedule> {
    form_batches(csf, b).map(|slots| to_schedule(instance, &slots))
}

pub(crate) fn to_schedule(instance: &Instance, slots: &[Vec<usize>]) -> Schedule {
    let mut s = Schedule::from_slots(
        slots.iter().map(|v| v.iter().map(|&j| JobId(j)).collect()).collect(),
    );
    s.timetable(instance);
    s
}

pub(crate) fn slot_completions(instance: &Instance, slots: &[Vec<usize>], out: &mut Vec<Time>) {
    out.clear();
    let mut t = 0;
    for slot in slots {
        if !slot.is_empty() {
            t += instance.setup() + slot.iter().map(|&j| instance.p(j)).sum::<Time>();
        }
        out.push(t);
    }
}

/// Reference solver. Mutates `csf` into the final family.
///
/// Returns a schedule with every cost below `y` and minimum makespan among
/// schedules that satisfy the entry family, or `None` when there is none.
pub fn aux1(
    instance: &Instance,
    csf: &mut Csf,
    b: usize,
    y: Threshold,
    obs: &mut impl Observer,
) -> Option<Schedule> {
    let mut completion = Vec::with_capacity(instance.n());
    loop {
        let slots = form_batches(csf, b)?;
        slot_completions(instance, &slots, &mut completion);
        obs.event(Event::Times(&completion));
        let mut adjusted = false;
        for i in (0..slots.len()).rev() {
            let mut members = slots[i].clone();
            members.sort_unstable_by(|&a, &b| instance.cmp_key(b, a));
            for j in members {
                if y.admits(instance.cost(j, completion[i])) {
                    continue;
                }
                // completion times are non-decreasing in the slot index
                let k = (0..i).rev().find(|&k| y.admits(instance.cost(j, completion[k])))?;
                let from = csf.ordinal(j);
                csf.move_job(j, k);
                obs.event(Event::Move { job: JobId(j), from, to: k, case: None });
                adjusted = true;
            }
        }
        if !adjusted {
            return Some(to_schedule(instance, &slots));
        }
        if !csf.prefix_capacity_ok(b) {
            return None;
        }
    }
}

/// Warm-startable state of the incremental solver: a family and the greedy
/// schedule built from it, kept in sync across calls.
#[derive(Clone, Debug)]
pub struct BoundedSolverState<'a> {
    instance: &'a Instance,
    b: usize,
    csf: Csf,
    slots: Vec<Vec<usize>>,
    slot_of: Vec<usize>,
    completion: Vec<Time>,
    first_nonempty: usize,
    adjustments: u64,
    queries: u64,
}

impl<'a> BoundedSolverState<'a> {
    /// Starts from the family with every job in the last component.
    pub fn new(instance: &'a Instance) -> Self {
        Self::with_csf(instance, Csf::initial(instance))
            .expect("the initial family always admits a schedule")
    }

    /// Builds the greedy schedule for `csf`; `None` if there is none.
    pub fn with_csf(instance: &'a Instance, csf: Csf) -> Option<Self> {
        let b = instance.batch_limit();
        let slots = form_batches(&csf, b)?;
        let mut slot_of = vec![0; instance.n()];
        for (i, slot) in slots.iter().enumerate() {
            for &j in slot {
                slot_of[j] = i;
            }
        }
        let mut state = BoundedSolverState {
            instance,
            b,
            csf,
            slots,
            slot_of,
            completion: Vec::with_capacity(instance.n()),
            first_nonempty: 0,
            adjustments: 0,
            queries: 0,
        };
        state.retime();
        Some(state)
    }

    pub fn csf(&self) -> &Csf {
        &self.csf
    }

    pub fn schedule(&self) -> Schedule {
        to_schedule(self.instance, &self.slots)
    }

    pub fn completions(&self) -> &[Time] {
        &self.completion
    }

    /// Schedule repairs performed so far.
    pub fn adjustments(&self) -> u64 {
        self.adjustments
    }

    /// Calls to [`Self::improaux1`] so far.
    pub fn queries(&self) -> u64 {
        self.queries
    }

    fn retime(&mut self) {
        slot_completions(self.instance, &self.slots, &mut self.completion);
        self.first_nonempty = self.slots.iter().position(|s| !s.is_empty()).unwrap_or(self.slots.len());
    }

    /// Minimum-makespan schedule with every cost below `y` among schedules
    /// satisfying the current family, or `None` if there is none.
    ///
    /// On success the state holds the returned schedule and the tightened
    /// family, ready for a call with a smaller threshold. After `None` the
    /// state is no longer meaningful.
    pub fn improaux1(&mut self, y: Threshold, obs: &mut impl Observer) -> Option<Schedule> {
        self.queries += 1;
        obs.event(Event::Query { y });
        obs.event(Event::Times(&self.completion));
        let inst = self.instance;
        loop {
            let mut adjusted = false;
            for i in (0..self.slots.len()).rev() {
                loop {
                    let c = self.completion[i];
                    let violator = self.slots[i]
                        .iter()
                        .copied()
                        .filter(|&j| !y.admits(inst.cost(j, c)))
                        .max_by_key(|&j| inst.key(j));
                    let Some(j) = violator else { break };
                    if !self.adjust(i, j, obs) {
                        return None;
                    }
                    adjusted = true;
                }
            }
            if !adjusted {
                return Some(self.schedule());
            }
        }
    }

    /// Moves violating job `j` out of slot `i` into component `i - 1` and
    /// repairs the schedule to the greedy one for the new family.
    fn adjust(&mut self, i: usize, j: usize, obs: &mut impl Observer) -> bool {
        if i == 0 {
            return false;
        }
        self.adjustments += 1;
        let from = self.csf.ordinal(j);
        self.csf.move_job(j, i - 1);
        self.take(i, j);

        // The slot refills with the best job that could sit here but lost
        // out to capacity earlier on.
        let mut hole = self.displaced_max(i).map(|x| {
            let e = self.slot_of[x];
            self.take(e, x);
            self.put(i, x);
            (x, e)
        });
        let case = if hole.is_some() { 2 } else { 1 };
        obs.event(Event::Move { job: JobId(j), from, to: i - 1, case: Some(case) });
        if self.slots[i].is_empty() {
            return false;
        }

        let inst = self.instance;
        let key = |j: usize| inst.key(j);
        let mut carry = j;
        let mut c = i - 1;
        loop {
            match hole {
                Some((_, e)) if c > e => {
                    debug_assert_eq!(self.slots[c].len(), self.b, "slot between hole and source is full");
                    carry = self.swap_smallest(c, carry);
                    c -= 1;
                }
                Some((_, e)) => match self.displaced_max(e) {
                    Some(z) if key(z) > key(carry) => {
                        let ez = self.slot_of[z];
                        self.take(ez, z);
                        self.put(e, z);
                        hole = Some((z, ez));
                        c = e - 1;
                    }
                    _ => {
                        self.put(e, carry);
                        break;
                    }
                },
                None => {
                    if self.slots[c].len() < self.b {
                        self.put(c, carry);
                        break;
                    }
                    carry = self.swap_smallest(c, carry);
                    if c == 0 {
                        return false;
                    }
                    c -= 1;
                }
            }
        }
        self.retime();
        obs.event(Event::Times(&self.completion));
        true
    }

    /// Highest-key job sitting before slot `c` although its component allows slot `c`.
    fn displaced_max(&self, c: usize) -> Option<usize> {
        let lo = self.first_nonempty.min(c);
        self.slots[lo..c]
            .iter()
            .flatten()
            .copied()
            .filter(|&j| self.csf.ordinal(j) >= c)
            .max_by_key(|&j| self.instance.key(j))
    }

    /// Inserts `carry` into full slot `c` and returns whichever job of the
    /// slot plus `carry` has the smallest key.
    fn swap_smallest(&mut self, c: usize, carry: usize) -> usize {
        let (at, &min) = self.slots[c]
            .iter()
            .enumerate()
            .min_by_key(|&(_, &j)| self.instance.key(j))
            .expect("full slot");
        if self.instance.key(carry) < self.instance.key(min) {
            return carry;
        }
        self.slots[c][at] = carry;
        self.slot_of[carry] = c;
        min
    }

    fn take(&mut self, slot: usize, j: usize) {
        let at = self.slots[slot].iter().position(|&x| x == j).expect("job in slot");
        self.slots[slot].swap_remove(at);
    }

    fn put(&mut self, slot: usize, j: usize) {
        self.slots[slot].push(j);
        self.slot_of[j] = slot;
    }
}
