// SPDX-License-Identifier: Apache-2.0

//! 4-ary min-heap keyed by support with lazy decrease-key.
//!
//! A key change pushes a fresh entry; entries whose key no longer matches the
//! vertex's current key (or whose vertex was removed) are discarded on pop.
//! Ties go to the smaller vertex label.

const ARITY: usize = 4;

#[derive(Debug, Clone)]
pub struct MinSupportQueue {
    heap: Vec<(u64, u32)>,
    key: Vec<u64>,
    present: Vec<bool>,
    len: usize,
}

impl MinSupportQueue {
    /// Queue over vertices `0..keys.len()`, all present.
    pub fn new(keys: &[u64]) -> Self {
        let mut heap: Vec<(u64, u32)> = keys
            .iter()
            .enumerate()
            .map(|(v, &k)| (k, v as u32))
            .collect();
        // Floyd heapify.
        if heap.len() > 1 {
            for i in (0..=(heap.len() - 2) / ARITY).rev() {
                sift_down(&mut heap, i);
            }
        }
        MinSupportQueue {
            heap,
            key: keys.to_vec(),
            present: vec![true; keys.len()],
            len: keys.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: u32) -> bool {
        self.present[v as usize]
    }

    pub fn key(&self, v: u32) -> u64 {
        self.key[v as usize]
    }

    /// Sets the key of a present vertex. Any direction is accepted.
    pub fn set_key(&mut self, v: u32, key: u64) {
        debug_assert!(self.present[v as usize]);
        if self.key[v as usize] == key {
            return;
        }
        self.key[v as usize] = key;
        self.heap.push((key, v));
        let last = self.heap.len() - 1;
        sift_up(&mut self.heap, last);
    }

    pub fn remove(&mut self, v: u32) {
        if std::mem::replace(&mut self.present[v as usize], false) {
            self.len -= 1;
        }
    }

    pub fn pop_min(&mut self) -> Option<(u32, u64)> {
        while let Some((k, v)) = self.pop_raw() {
            if self.present[v as usize] && self.key[v as usize] == k {
                self.present[v as usize] = false;
                self.len -= 1;
                return Some((v, k));
            }
        }
        None
    }

    fn pop_raw(&mut self) -> Option<(u64, u32)> {
        let last = self.heap.pop()?;
        if self.heap.is_empty() {
            return Some(last);
        }
        let top = std::mem::replace(&mut self.heap[0], last);
        sift_down(&mut self.heap, 0);
        Some(top)
    }
}

fn sift_up(heap: &mut [(u64, u32)], mut i: usize) {
    while i > 0 {
        let parent = (i - 1) / ARITY;
        if heap[i] < heap[parent] {
            heap.swap(i, parent);
            i = parent;
        } else {
            break;
        }
    }
}

fn sift_down(heap: &mut [(u64, u32)], mut i: usize) {
    loop {
        let first = i * ARITY + 1;
        if first >= heap.len() {
            return;
        }
        let last = (first + ARITY).min(heap.len());
        let mut best = first;
        for c in first + 1..last {
            if heap[c] < heap[best] {
                best = c;
            }
        }
        if heap[best] < heap[i] {
            heap.swap(i, best);
            i = best;
        } else {
            return;
        }
    }
}
