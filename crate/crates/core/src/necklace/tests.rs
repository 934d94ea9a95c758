use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::map::rooted_isomorphic;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

/// Step-by-step reference growth on a boundary list of labels. The list runs
/// from the leftmost integer to the rightmost one and `active` indexes `b_j`.
fn reference_faces(word: &Word) -> Vec<[VertexLabel; 3]> {
    use VertexLabel::*;
    let mut boundary = vec![Integer(0), Integer(1)];
    let mut active = 0;
    let mut faces = Vec::new();
    for (k, l) in word.letters().iter().enumerate() {
        let (b, r) = (boundary[active], boundary[active + 1]);
        let fresh = Upper { step: k + 1 };
        match l {
            Letter::NewBlue => {
                faces.push([b, r, fresh]);
                boundary.insert(active + 1, fresh);
                active += 1;
            }
            Letter::NewRed => {
                faces.push([b, r, fresh]);
                boundary.insert(active + 1, fresh);
            }
            Letter::StepBlue if active > 0 => {
                faces.push([b, r, boundary[active - 1]]);
                boundary.remove(active);
                active -= 1;
            }
            Letter::StepBlue => {
                let Integer(m) = b else { unreachable!() };
                faces.push([b, r, Integer(m - 1)]);
                boundary[0] = Integer(m - 1);
            }
            Letter::StepRed if active + 2 < boundary.len() => {
                faces.push([b, r, boundary[active + 2]]);
                boundary.remove(active + 1);
            }
            Letter::StepRed => {
                let Integer(m) = r else { unreachable!() };
                faces.push([b, r, Integer(m + 1)]);
                boundary[active + 1] = Integer(m + 1);
            }
        }
    }
    faces
}

fn labelled_faces(m: &NecklaceMap) -> Vec<[VertexLabel; 3]> {
    m.map.faces().map(|f| f.map(|v| m.labels[v.0])).collect()
}

fn words_up_to(n: usize) -> impl Iterator<Item = Word> {
    (0..=n).flat_map(Word::all_of_length)
}

#[test]
fn first_steps() {
    let mut s = NecklaceState::new();
    s.step(Letter::NewBlue);
    assert_eq!(s.n_faces(), 1);
    let (b, r) = s.active_edge();
    assert_eq!(s.label(b), VertexLabel::Upper { step: 1 });
    assert_eq!(s.label(r), VertexLabel::Integer(1));

    let mut s = NecklaceState::new();
    s.step(Letter::StepBlue);
    let m = s.to_map().unwrap();
    let mut labels: Vec<_> = m
        .map
        .face(FaceId(0))
        .iter()
        .map(|v| m.labels[v.0])
        .collect();
    labels.sort_by_key(|l| format!("{l:?}"));
    assert_eq!(
        labels,
        vec![
            VertexLabel::Integer(-1),
            VertexLabel::Integer(0),
            VertexLabel::Integer(1)
        ]
    );
    let (b, r) = s.active_edge();
    assert_eq!(
        (s.label(b), s.label(r)),
        (VertexLabel::Integer(-1), VertexLabel::Integer(1))
    );
    // [0, -1] lies on the line.
    let line: Vec<_> = (0..3)
        .filter(|i| m.on_line[*i])
        .map(|i| {
            let h = HalfEdgeId(i);
            (m.labels[m.map.origin(h).0], m.labels[m.map.dest(h).0])
        })
        .collect();
    assert!(line.contains(&(VertexLabel::Integer(-1), VertexLabel::Integer(0))));

    let mut s = NecklaceState::new();
    s.step(Letter::NewBlue);
    s.step(Letter::StepBlue);
    assert_eq!(s.n_faces(), 2);
    let (b, r) = s.active_edge();
    assert_eq!(
        (s.label(b), s.label(r)),
        (VertexLabel::Integer(0), VertexLabel::Integer(1))
    );
}

#[test]
fn empty_word_has_no_map() {
    assert_eq!(
        build_plus(&Word::default()).unwrap_err(),
        NecklaceError::EmptyWord
    );
    assert!(grow(&Word::default()).to_map().is_none());
}

#[test]
fn single_letter_is_single_triangle() {
    for l in Letter::ALL {
        let m = build_plus(&Word::new(vec![l])).unwrap();
        assert_eq!(m.map.n_faces(), 1);
        assert_eq!(m.map.n_vertices(), 3);
    }
}

#[test]
fn figure_word() {
    let word = w("BRbRRbBBrrRBRR");
    let m = build_plus(&word).unwrap();
    assert_eq!(m.map.n_faces(), 14);
    assert_eq!(labelled_faces(&m), reference_faces(&word));
    assert_eq!(walk(&word).endpoint(), (2, 4));
    assert_eq!(m.map.euler_characteristic(), 1);
    assert_eq!(m.map.root_vertex(), m.origin());
}

#[test]
fn blue_steps_on_the_line_make_a_fan() {
    let m = build_plus(&w("bbbb")).unwrap();
    assert_eq!(m.map.n_faces(), 4);
    assert_eq!(m.map.n_vertices(), 6);
    let one = m.vertex_with_label(VertexLabel::Integer(1)).unwrap();
    assert!(m.map.faces().all(|f| f.contains(&one)));
    assert_eq!(m.map.degree(one), 5);
    for k in -4..=1 {
        assert!(m.vertex_with_label(VertexLabel::Integer(k)).is_some());
    }
    assert_eq!(m.on_line.iter().filter(|x| **x).count(), 5);
}

#[test]
fn growth_matches_reference_exhaustively() {
    for word in words_up_to(6).filter(|w| !w.is_empty()) {
        let m = build_plus(&word).unwrap();
        assert_eq!(labelled_faces(&m), reference_faces(&word), "{word}");
        assert_eq!(m.map.n_faces(), word.len());
    }
}

#[test]
fn rooted_builds() {
    assert_eq!(build_rooted(&w("B"), 1).unwrap().map.n_faces(), 1);
    let m = build_rooted(&w("BR"), 2).unwrap();
    assert_eq!(m.map.root().face, FaceId(1));
    let plus = build_plus(&w("BRbR")).unwrap();
    for k in 1..=4 {
        let m = build_rooted(&w("BRbR"), k).unwrap();
        assert_eq!(labelled_faces(&m), labelled_faces(&plus));
        assert_eq!(rooted_isomorphic(&m.map, &plus.map), k == 1, "k = {k}");
    }
    assert_eq!(
        build_rooted(&w("BR"), 0).unwrap_err(),
        NecklaceError::RootOutOfRange { index: 0, len: 2 }
    );
    assert_eq!(
        build_rooted(&w("BR"), 3).unwrap_err(),
        NecklaceError::RootOutOfRange { index: 3, len: 2 }
    );
    assert!(build_rooted(&Word::default(), 1).is_err());
}

#[test]
fn glue_word_examples() {
    assert_eq!(glue_word(&w("B"), &w("R")).to_string(), "rB");
    assert_eq!(glue_word(&w(""), &w("")).to_string(), "");
    assert_eq!(glue_word(&w("Bb"), &w("rR")).to_string(), "rRBb");
}

#[test]
fn word_parsing() {
    assert_eq!(w("BbRr").letters(), &Letter::ALL[..]);
    assert_eq!(
        "BxR".parse::<Word>().unwrap_err(),
        ParseWordError {
            position: 1,
            found: 'x'
        }
    );
    assert_eq!(Word::all_of_length(3).count(), 64);
    for l in Letter::ALL {
        assert_eq!(l.prime().prime(), l);
        let (a, b) = (l.increment(), l.prime().increment());
        assert_eq!((a.0 + b.0, a.1 + b.1), (0, 0));
    }
}

#[test]
fn walk_examples() {
    assert_eq!(walk(&w("B")).points(), &[(0, 0), (1, 0)]);
    assert_eq!(walk(&w("Bb")).points(), &[(0, 0), (1, 0), (0, 0)]);
    assert!(walk(&w("")).is_empty());
}

#[test]
fn origin_degree_examples() {
    assert_eq!(degree_of_origin_from_walk(&w("B")), 2);
    assert_eq!(degree_of_origin_from_walk(&w("b")), 2);
    assert_eq!(degree_of_origin_from_walk(&w("")), 0);
}

#[test]
fn origin_degree_matches_map_exhaustively() {
    for word in words_up_to(6).filter(|w| !w.is_empty()) {
        let m = build_plus(&word).unwrap();
        let from_walk = degree_of_origin_from_walk(&word);
        assert_eq!(from_walk, m.map.degree(m.origin()), "{word}");
        assert!(from_walk <= 2 * origin_visit_count(&word) + 2, "{word}");
    }
}

#[test]
fn origin_boundary_membership_exhaustively() {
    assert!(origin_on_outer_boundary(&w("B")));
    assert!(!origin_on_outer_boundary(&w("b")));
    for word in words_up_to(6).filter(|w| !w.is_empty()) {
        let m = build_plus(&word).unwrap();
        assert_eq!(
            origin_on_outer_boundary(&word),
            m.on_outer_boundary(m.origin()),
            "{word}"
        );
    }
}

fn boundary_size(m: &NecklaceMap) -> i64 {
    m.map.boundary_vertex_count() as i64
}

#[test]
fn boundary_bound_examples() {
    let b = boundary_size_bound(&w("B"));
    assert_eq!(
        b,
        BoundaryBound {
            a: 0,
            b: 0,
            x_n: 1,
            y_n: 0
        }
    );
    assert_eq!(b.value(), 1);
    let b = boundary_size_bound(&w("Bb"));
    assert_eq!(b.value(), 0);
    assert!(b.is_degenerate());
}

#[test]
fn boundary_bound_is_exact_up_to_two() {
    for word in words_up_to(6).filter(|w| !w.is_empty()) {
        let m = build_plus(&word).unwrap();
        let bound = boundary_size_bound(&word);
        assert_eq!(bound.dominating(), boundary_size(&m), "{word}");
        // The off-line part of the boundary is the two chains.
        let off_line = (0..m.map.n_vertices())
            .filter(|v| m.on_outer_boundary(VertexId(*v)))
            .count() as i64;
        assert_eq!(grow(&word).boundary_chain().len() as i64, off_line);
        assert_eq!(off_line, bound.x_n + bound.a + bound.y_n + bound.b + 2);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let word = Word::random(10_000, &mut rng);
        let m = build_plus(&word).unwrap();
        assert!(boundary_size_bound(&word).dominating() >= boundary_size(&m));
    }
}

fn check_fundamental_identity(x: &Word, y: &Word) {
    let glued = build_glued(x, y).unwrap();
    let z = glue_word(x, y);
    let rooted = build_rooted(&z, y.len() + 1).unwrap();
    assert_eq!(glued.map.n_faces(), rooted.map.n_faces());
    assert!(
        rooted_isomorphic(&rooted.map, &glued.map),
        "X = {x}, Y = {y}"
    );
}

#[test]
fn fundamental_identity_exhaustive() {
    let xs: Vec<Word> = (1..=4).flat_map(Word::all_of_length).collect();
    let ys: Vec<Word> = words_up_to(4).collect();
    for x in &xs {
        for y in &ys {
            check_fundamental_identity(x, y);
        }
    }
}

#[test]
fn fundamental_identity_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let (n, m) = (rng.gen_range(5..200), rng.gen_range(5..200));
        let x = Word::random(n, &mut rng);
        let y = Word::random(m, &mut rng);
        check_fundamental_identity(&x, &y);
    }
}

#[test]
fn built_maps_are_valid_discs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let x = Word::random(rng.gen_range(1..60), &mut rng);
        let y = Word::random(rng.gen_range(1..60), &mut rng);
        let k = rng.gen_range(1..=x.len());
        for map in [
            build_glued(&x, &y).unwrap().map,
            build_rooted(&x, k).unwrap().map,
        ] {
            let faces: Vec<_> = map.faces().collect();
            let checked = RootedTriangulation::from_parts(
                map.n_vertices(),
                &faces,
                map.twins().to_vec(),
                map.root(),
                SurfaceKind::Disc,
            );
            assert!(checked.is_ok(), "X = {x}, Y = {y}, k = {k}: {checked:?}");
        }
    }
}

#[test]
fn minus_is_mirror_image() {
    let x = w("BRbRRbBBrrRBRR");
    let plus = build_plus(&x).unwrap();
    let minus = build_minus(&x).unwrap();
    assert_eq!(minus.map.n_faces(), 14);
    assert_eq!(minus.map.euler_characteristic(), 1);
    assert_eq!(minus.mirrored().map, plus.map);
    assert_eq!(
        minus.on_line.iter().filter(|l| **l).count(),
        plus.on_line.iter().filter(|l| **l).count()
    );
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn word_strategy() -> impl Strategy<Value = Word> {
        proptest::collection::vec(0usize..4, 1..300)
            .prop_map(|v| Word::new(v.into_iter().map(|i| Letter::ALL[i]).collect()))
    }

    proptest! {
        #[test]
        fn face_count_and_reference(word in word_strategy()) {
            let m = build_plus(&word).unwrap();
            prop_assert_eq!(m.map.n_faces(), word.len());
            prop_assert_eq!(labelled_faces(&m), reference_faces(&word));
        }

        #[test]
        fn walk_statistics(word in word_strategy()) {
            let m = build_plus(&word).unwrap();
            prop_assert_eq!(degree_of_origin_from_walk(&word), m.map.degree(m.origin()));
            prop_assert_eq!(origin_on_outer_boundary(&word), m.on_outer_boundary(m.origin()));
            prop_assert_eq!(boundary_size_bound(&word).dominating(), boundary_size(&m));
        }
    }
}
