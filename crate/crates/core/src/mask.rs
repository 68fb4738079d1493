use std::fmt;
use std::ops::{BitOr, BitOrAssign, BitXor, BitXorAssign};

/// Fixed-length bit vector over the edges of a flow graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeMask {
    words: Vec<u64>,
    len: usize,
}

impl EdgeMask {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut m = Self {
            words: vec![u64::MAX; len.div_ceil(64)],
            len,
        };
        m.clear_padding();
        m
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut m = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            m.set(i, b);
        }
        m
    }

    /// Convenience for literals such as `[0, 1, 1, 0]`.
    pub fn from_01(bits: &[u8]) -> Self {
        let bools: Vec<bool> = bits.iter().map(|&b| b != 0).collect();
        Self::from_bits(&bools)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_all_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + tz)
            })
        })
    }

    pub fn to_01(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    /// Prefix `[0, at)` from `self`, suffix from `other`.
    pub fn splice(&self, other: &EdgeMask, at: usize) -> EdgeMask {
        assert_eq!(self.len, other.len);
        assert!(at <= self.len);
        let mut out = other.clone();
        let full = at / 64;
        out.words[..full].copy_from_slice(&self.words[..full]);
        let rem = at % 64;
        if rem != 0 {
            let low = (1u64 << rem) - 1;
            out.words[full] = (self.words[full] & low) | (other.words[full] & !low);
        }
        out
    }

    fn clear_padding(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl BitXorAssign<&EdgeMask> for EdgeMask {
    fn bitxor_assign(&mut self, rhs: &EdgeMask) {
        assert_eq!(self.len, rhs.len, "edge masks over different graphs");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitOrAssign<&EdgeMask> for EdgeMask {
    fn bitor_assign(&mut self, rhs: &EdgeMask) {
        assert_eq!(self.len, rhs.len, "edge masks over different graphs");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a |= b;
        }
    }
}

impl BitXor for &EdgeMask {
    type Output = EdgeMask;
    fn bitxor(self, rhs: &EdgeMask) -> EdgeMask {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl BitOr for &EdgeMask {
    type Output = EdgeMask;
    fn bitor(self, rhs: &EdgeMask) -> EdgeMask {
        let mut out = self.clone();
        out |= rhs;
        out
    }
}

impl fmt::Debug for EdgeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeMask({self})")
    }
}

impl fmt::Display for EdgeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}
