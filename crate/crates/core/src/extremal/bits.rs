//! Fixed-width 256-bit set used by the ruler search.

pub(crate) const WIDTH: u32 = 256;
const WORDS: usize = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Bits([u64; WORDS]);

impl Bits {
    pub(crate) fn single(i: u32) -> Self {
        let mut b = Self::default();
        b.set(i);
        b
    }

    #[inline]
    pub(crate) fn set(&mut self, i: u32) {
        debug_assert!(i < WIDTH);
        self.0[(i / 64) as usize] |= 1u64 << (i % 64);
    }

    #[inline]
    pub(crate) fn test(&self, i: u32) -> bool {
        i < WIDTH && self.0[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn or(&self, other: &Self) -> Self {
        let mut out = *self;
        for (w, o) in out.0.iter_mut().zip(other.0.iter()) {
            *w |= o;
        }
        out
    }

    /// Moves every bit `i` to `i + s`, dropping bits that leave the window.
    #[inline]
    pub(crate) fn shl(&self, s: u32) -> Self {
        if s >= WIDTH {
            return Self::default();
        }
        let (ws, bs) = ((s / 64) as usize, s % 64);
        let mut out = [0u64; WORDS];
        for i in (ws..WORDS).rev() {
            let src = i - ws;
            out[i] = self.0[src] << bs;
            if bs != 0 && src > 0 {
                out[i] |= self.0[src - 1] >> (64 - bs);
            }
        }
        Self(out)
    }

    /// Moves every bit `i ≥ s` to `i - s`.
    #[inline]
    pub(crate) fn shr(&self, s: u32) -> Self {
        if s >= WIDTH {
            return Self::default();
        }
        let (ws, bs) = ((s / 64) as usize, s % 64);
        let mut out = [0u64; WORDS];
        for (i, slot) in out.iter_mut().enumerate().take(WORDS - ws) {
            let src = i + ws;
            *slot = self.0[src] >> bs;
            if bs != 0 && src + 1 < WORDS {
                *slot |= self.0[src + 1] << (64 - bs);
            }
        }
        Self(out)
    }


    /// Number of clear bits in `1..=upto`.
    #[inline]
    pub(crate) fn clear_count_upto(&self, upto: u32) -> u32 {
        let mut set = 0;
        for (w, word) in self.0.iter().enumerate() {
            let lo = w as u32 * 64;
            if lo > upto {
                break;
            }
            let mut bits = *word;
            if upto - lo < 63 {
                bits &= (1u64 << (upto - lo + 1)) - 1;
            }
            if w == 0 {
                bits &= !1;
            }
            set += bits.count_ones();
        }
        upto - set
    }

    /// Indices of set bits, ascending.
    #[cfg(test)]
    pub(crate) fn ones(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                (rest != 0).then(|| {
                    let i = rest.trailing_zeros();
                    rest &= rest - 1;
                    w as u32 * 64 + i
                })
            })
        })
    }

    /// Sum of the `count` smallest positive integers whose bit is clear.
    pub(crate) fn smallest_clear_sum(&self, count: u32) -> u32 {
        let mut sum = 0;
        let mut taken = 0;
        for (w, word) in self.0.iter().enumerate() {
            let mut free = !word;
            if w == 0 {
                free &= !1;
            }
            while free != 0 {
                if taken == count {
                    return sum;
                }
                sum += w as u32 * 64 + free.trailing_zeros();
                taken += 1;
                free &= free - 1;
            }
        }
        if taken == count {
            sum
        } else {
            u32::MAX
        }
    }
}
