//! Ring buffer of per-step birth counts with O(1) sliding window sums.

/// Running sum with Neumaier compensation. Window sums are updated by one
/// addition and one subtraction per step for millions of steps; the
/// compensation term keeps the drift at the level of a single rounding.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    fn value(&self) -> f64 {
        // entries are non-negative, so the true sum is too
        (self.sum + self.comp).max(0.0)
    }
}

/// Births of one line (reproducing or butchery), indexed by lag relative to
/// the step about to be computed: `lag(1)` is the most recent birth count.
#[derive(Debug, Clone)]
pub struct BirthHistory {
    buf: Vec<f64>,
    /// Slot receiving the next birth; also the slot of `lag(len)`.
    next: usize,
    window_lo: usize,
    window_hi: usize,
    window: CompensatedSum,
    alive: CompensatedSum,
}

impl BirthHistory {
    /// `oldest_first[i]` is the birth count at lag `len - i`. The window
    /// covers lags `lo..=hi`, with `1 <= lo <= hi <= len`.
    pub fn new(oldest_first: Vec<f64>, lo: usize, hi: usize) -> Self {
        let len = oldest_first.len();
        assert!(
            1 <= lo && lo <= hi && hi <= len,
            "window {lo}..={hi} outside history of {len}"
        );
        let mut h = BirthHistory {
            buf: oldest_first,
            next: 0,
            window_lo: lo,
            window_hi: hi,
            window: CompensatedSum::default(),
            alive: CompensatedSum::default(),
        };
        for j in lo..=hi {
            h.window.add(h.lag(j));
        }
        for j in 1..=hi {
            h.alive.add(h.lag(j));
        }
        h
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }

    pub fn window(&self) -> (usize, usize) {
        (self.window_lo, self.window_hi)
    }

    /// Birth count `j` steps before the upcoming step, `1 <= j <= len`.
    #[inline]
    pub fn lag(&self, j: usize) -> f64 {
        let len = self.buf.len();
        debug_assert!((1..=len).contains(&j));
        self.buf[(self.next + len - j) % len]
    }

    /// Incrementally maintained sum over the window lags.
    #[inline]
    pub fn window_sum(&self) -> f64 {
        self.window.value()
    }

    /// Everyone born in the last `hi` steps, juveniles included.
    #[inline]
    pub fn alive_sum(&self) -> f64 {
        self.alive.value()
    }

    /// Window sum by direct summation.
    pub fn naive_window_sum(&self) -> f64 {
        (self.window_lo..=self.window_hi).map(|j| self.lag(j)).sum()
    }

    /// Record the births of the step just computed.
    #[inline]
    pub fn push(&mut self, births: f64) {
        let leaving = self.lag(self.window_hi);
        self.buf[self.next] = births;
        self.next = (self.next + 1) % self.buf.len();
        let entering = self.lag(self.window_lo);
        self.window.add(entering);
        self.window.add(-leaving);
        self.alive.add(births);
        self.alive.add(-leaving);
    }

    /// Contents from oldest to most recent.
    pub fn oldest_first(&self) -> Vec<f64> {
        (1..=self.len()).rev().map(|j| self.lag(j)).collect()
    }
}
