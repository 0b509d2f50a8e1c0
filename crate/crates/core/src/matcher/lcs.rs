/// Length of the longest common subsequence of two identifier strings.
///
/// Standard dynamic program, two rows of state, O(|a|·|b|) time.
pub fn lcs_length(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut row = vec![0usize; b.len() + 1];
    for &ca in &a {
        for (j, &cb) in b.iter().enumerate() {
            row[j + 1] = if ca == cb {
                prev[j] + 1
            } else {
                row[j].max(prev[j + 1])
            };
        }
        std::mem::swap(&mut prev, &mut row);
    }
    prev[b.len()]
}

#[cfg(test)]
mod tests {
    use super::lcs_length;

    #[test]
    fn known_lengths() {
        assert_eq!(lcs_length("abc", "abc"), 3);
        assert_eq!(lcs_length("x", "y"), 0);
        assert_eq!(lcs_length("month_3_7", "month_4_8"), 7);
        assert_eq!(lcs_length("", "abc"), 0);
        assert_eq!(lcs_length("abcde", "ace"), 3);
        assert_eq!(lcs_length("ace", "abcde"), 3);
    }

    #[test]
    fn agrees_with_recursive_definition() {
        fn slow(a: &[char], b: &[char]) -> usize {
            match (a.split_last(), b.split_last()) {
                (Some((x, ra)), Some((y, rb))) if x == y => slow(ra, rb) + 1,
                (Some((_, ra)), Some((_, rb))) => slow(ra, b).max(slow(a, rb)),
                _ => 0,
            }
        }
        let words = ["", "a", "ab", "ba", "abc", "cab", "aab", "x$1", "x$2"];
        for wa in words {
            for wb in words {
                let a: Vec<char> = wa.chars().collect();
                let b: Vec<char> = wb.chars().collect();
                assert_eq!(lcs_length(wa, wb), slow(&a, &b), "{wa} vs {wb}");
            }
        }
    }
}
