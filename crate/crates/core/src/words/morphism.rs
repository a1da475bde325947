//! Fixed points of a few substitutions used as test material.

/// Prefix of length `len` of the fixed point of `h` starting with `seed`.
/// `h(seed)` must start with `seed` and be longer than one letter.
pub fn fixed_point(h: impl Fn(u8) -> Vec<u8>, seed: u8, len: usize) -> Vec<u8> {
    let mut w = vec![seed];
    while w.len() < len {
        let next: Vec<u8> = w.iter().flat_map(|&c| h(c)).collect();
        assert!(next.len() > w.len(), "substitution does not grow");
        w = next;
    }
    w.truncate(len);
    w
}

/// Thue-Morse word `0 -> 01, 1 -> 10`.
pub fn thue_morse(len: usize) -> Vec<u8> {
    fixed_point(|c| vec![c, 1 - c], 0, len)
}

/// Fibonacci word `0 -> 01, 1 -> 0`.
pub fn fibonacci(len: usize) -> Vec<u8> {
    fixed_point(|c| if c == 0 { vec![0, 1] } else { vec![0] }, 0, len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::binary_string;

    #[test]
    fn prefixes() {
        assert_eq!(binary_string(&thue_morse(8)), "01101001");
        assert_eq!(binary_string(&fibonacci(13)), "0100101001001");
    }
}
