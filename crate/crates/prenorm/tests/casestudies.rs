//! Cross-bound behaviour of the two standalone case studies: enlarging the
//! word-length bound refines but never contradicts earlier answers, and the
//! divisibility category's brute-force searches match their closed forms.

use prenorm::casestudies::{
    ideal_cokernel, ideal_factorise, ideal_kernel, ideal_normal_epis, mon_counterexample_check,
    BoundedFPMonoid, BoundedWordStudy, IdealCategory, IdealFactorisation, DEFAULT_WORD_BOUND,
    MIN_WORD_BOUND,
};
use prenorm::engine::Verdict;

#[test]
fn monoid_classes_embed_into_the_next_bound() {
    for bound in MIN_WORD_BOUND..=7 {
        let small = BoundedFPMonoid::new(&['x', 'y', 'z'], &[("xx", "yy")], bound).unwrap();
        let large = BoundedFPMonoid::new(&['x', 'y', 'z'], &[("xx", "yy")], bound + 1).unwrap();
        for class in 0..small.class_count() {
            let mut images = small.members(class).map(|w| large.class_id(w).unwrap());
            let first = images.next().expect("classes are non-empty");
            assert!(
                images.all(|c| c == first),
                "class {class} at bound {bound} split at bound {}",
                bound + 1
            );
        }
    }
}

#[test]
fn congruence_groups_embed_into_the_next_bound() {
    for bound in MIN_WORD_BOUND..=7 {
        let small = BoundedWordStudy::new(bound).unwrap();
        let large = BoundedWordStudy::new(bound + 1).unwrap();
        for group in small.congruence_groups() {
            let lead = group[0];
            for other in &group[1..] {
                assert!(
                    large.congruent(lead, other).unwrap(),
                    "{lead:?} ~ {other:?} at bound {bound} but not at {}",
                    bound + 1
                );
            }
        }
    }
}

#[test]
fn witness_verdicts_are_stable_across_all_tested_bounds() {
    for bound in MIN_WORD_BOUND..=10 {
        let study = BoundedWordStudy::new(bound).unwrap();
        assert!(
            study.in_kernel_pair("xzx", "yzy").unwrap(),
            "projection no longer identifies the witnesses at bound {bound}"
        );
        assert!(
            !study.congruent("xzx", "yzy").unwrap(),
            "bounded congruence identified the witnesses at bound {bound}"
        );
    }
}

#[test]
fn check_report_is_stable_and_self_describing() {
    for bound in [MIN_WORD_BOUND, 6, DEFAULT_WORD_BOUND] {
        let report = mon_counterexample_check(bound).unwrap();
        assert_eq!(report.law, "mon-bounded-word");
        assert_eq!(report.verdict, Verdict::Pass, "bound {bound}");
        assert!(report.cases > 0);
        assert_eq!(report.witnesses_dropped, 0);
        let notes = report.notes.join("\n");
        assert!(
            notes.contains(&format!("word length {bound}")),
            "report must state the bound it ran at"
        );
        assert!(
            notes.contains("not an unconditional proof"),
            "report must state that the verification is bounded"
        );
        assert!(notes.contains("xzx") && notes.contains("yzy"));
    }
}

#[test]
fn larger_bounds_examine_more_words() {
    let small = BoundedWordStudy::new(MIN_WORD_BOUND).unwrap();
    let large = BoundedWordStudy::new(6).unwrap();
    assert!(large.monoid().word_count() > small.monoid().word_count());
    assert!(large.monoid().class_count() > small.monoid().class_count());
    assert!(large.even_class_count() > small.even_class_count());
    assert!(large.congruence_class_count() > small.congruence_class_count());
}

#[test]
fn divisibility_closed_forms_hold_up_to_a_thousand() {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let r = a % b;
            a = b;
            b = r;
        }
        a
    }
    for n in 1..=1000u64 {
        let k = ideal_kernel(n).unwrap();
        assert_eq!(k, 10 / gcd(n, 10), "kernel of {n}");
        assert_eq!(k, ideal_cokernel(n).unwrap(), "cokernel of {n}");
    }
    let epis: Vec<u64> = ideal_normal_epis().unwrap().into_iter().collect();
    assert_eq!(epis, vec![1, 2, 5, 10]);
}

#[test]
fn factorisation_verdict_depends_only_on_the_residue() {
    // n factors as (normal epi) . (trivial kernel) exactly when n divided by
    // gcd(n, 10) is coprime to 10.
    let cat = IdealCategory::new(1000).unwrap();
    for n in 1..=1000u64 {
        let expected = {
            fn gcd(a: u64, b: u64) -> u64 {
                if b == 0 {
                    a
                } else {
                    gcd(b, a % b)
                }
            }
            gcd(n / gcd(n, 10), 10) == 1
        };
        match cat.factorise(n).unwrap() {
            IdealFactorisation::Found { q, m } => {
                assert!(expected, "{n} should not factor");
                assert_eq!(q * m, n);
            }
            IdealFactorisation::Obstructed { kernel_of_m, .. } => {
                assert!(!expected, "{n} should factor");
                assert_ne!(kernel_of_m % 10, 0, "the obstructing kernel is non-trivial");
            }
        }
    }
    match ideal_factorise(25).unwrap() {
        IdealFactorisation::Obstructed {
            forced_q,
            forced_m,
            kernel_of_m,
        } => {
            assert_eq!((forced_q, forced_m, kernel_of_m), (5, 5, 2));
        }
        other => panic!("expected the obstruction for 25, got {other:?}"),
    }
}
