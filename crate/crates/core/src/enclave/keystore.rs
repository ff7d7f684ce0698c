use std::collections::HashMap;

use zeroize::{Zeroize, Zeroizing};

use super::heap::RECORD_OVERHEAD;
use crate::primitives::{Block, BLOCK_LEN};

pub(crate) struct KeyRecord {
    pub(crate) material: Zeroizing<Vec<u8>>,
    /// IV of the latest CBC encryption under this key.
    pub(crate) iv: Option<Zeroizing<Block>>,
}

impl KeyRecord {
    pub(crate) fn footprint(len: usize) -> usize {
        RECORD_OVERHEAD + len
    }

    fn footprint_now(&self) -> usize {
        Self::footprint(self.material.len()) + self.iv.as_ref().map_or(0, |_| BLOCK_LEN)
    }
}

#[derive(Default)]
pub(crate) struct Keystore {
    records: HashMap<u64, KeyRecord>,
}

impl Keystore {
    pub(crate) fn insert(&mut self, handle: u64, material: Zeroizing<Vec<u8>>) {
        self.records
            .insert(handle, KeyRecord { material, iv: None });
    }

    pub(crate) fn get(&self, handle: u64) -> Option<&KeyRecord> {
        self.records.get(&handle)
    }

    pub(crate) fn get_mut(&mut self, handle: u64) -> Option<&mut KeyRecord> {
        self.records.get_mut(&handle)
    }

    /// Overwrites and drops every record, returning the heap bytes they held.
    pub(crate) fn erase(&mut self) -> usize {
        let mut freed = 0;
        for (_, mut rec) in self.records.drain() {
            freed += rec.footprint_now();
            rec.material.zeroize();
            if let Some(iv) = rec.iv.as_mut() {
                iv.zeroize();
            }
        }
        freed
    }
}
