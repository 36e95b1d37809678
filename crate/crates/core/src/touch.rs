use std::sync::atomic::{AtomicU64, Ordering};

/// Counts primitive matrix operations. Cloning yields an independent counter
/// starting from the current value.
#[derive(Debug, Default)]
pub struct TouchCounter(AtomicU64);

impl TouchCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn bump(&self, k: u64) {
        self.0.fetch_add(k, Ordering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.0.store(0, Ordering::Relaxed);
    }
}

impl Clone for TouchCounter {
    fn clone(&self) -> Self {
        TouchCounter(AtomicU64::new(self.get()))
    }
}
