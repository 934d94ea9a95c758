use super::text::{emit, parse, ParseError};
use super::*;
use crate::necklace::{build_plus, Word};

fn v(i: usize) -> VertexId {
    VertexId(i)
}

fn single_triangle() -> RootedTriangulation {
    RootedTriangulation::from_faces(
        3,
        &[[v(0), v(1), v(2)]],
        Root::new(FaceId(0), 0),
        SurfaceKind::Disc,
    )
    .unwrap()
}

fn two_triangles() -> RootedTriangulation {
    RootedTriangulation::from_faces(
        4,
        &[[v(0), v(1), v(2)], [v(0), v(2), v(3)]],
        Root::new(FaceId(0), 0),
        SurfaceKind::Disc,
    )
    .unwrap()
}

fn wheel(n: usize) -> RootedTriangulation {
    let faces: Vec<[VertexId; 3]> = (0..n)
        .map(|i| [v(0), v(1 + i), v(1 + (i + 1) % n)])
        .collect();
    RootedTriangulation::from_faces(n + 1, &faces, Root::new(FaceId(0), 0), SurfaceKind::Disc)
        .unwrap()
}

fn bipyramid() -> RootedTriangulation {
    let faces = [
        [v(0), v(2), v(3)],
        [v(0), v(3), v(4)],
        [v(0), v(4), v(2)],
        [v(1), v(3), v(2)],
        [v(1), v(4), v(3)],
        [v(1), v(2), v(4)],
    ];
    RootedTriangulation::from_faces(5, &faces, Root::new(FaceId(0), 0), SurfaceKind::Sphere)
        .unwrap()
}

fn plus(word: &str) -> RootedTriangulation {
    build_plus(&word.parse::<Word>().unwrap()).unwrap().map
}

/// Independent BFS over an explicit edge list.
fn naive_distances(map: &RootedTriangulation, source: VertexId) -> Vec<Option<u32>> {
    let mut edges = Vec::new();
    for f in map.faces() {
        for i in 0..3 {
            edges.push((f[i].0, f[(i + 1) % 3].0));
        }
    }
    let mut dist = vec![None; map.n_vertices()];
    dist[source.0] = Some(0);
    for round in 0..map.n_vertices() as u32 {
        for &(a, b) in &edges {
            for (x, y) in [(a, b), (b, a)] {
                if dist[x] == Some(round) && dist[y].is_none() {
                    dist[y] = Some(round + 1);
                }
            }
        }
    }
    dist
}

/// Brute-force root-preserving equivalence of two parallel-edge-free
/// complexes given as oriented face triples, by trying every vertex bijection.
fn brute_force_equivalent(
    a: &[[usize; 3]],
    ra: [usize; 3],
    b: &[[usize; 3]],
    rb: [usize; 3],
) -> bool {
    fn normalize(f: [usize; 3]) -> [usize; 3] {
        let i = (0..3).min_by_key(|i| f[*i]).unwrap();
        [f[i], f[(i + 1) % 3], f[(i + 2) % 3]]
    }
    let verts = |fs: &[[usize; 3]]| {
        let mut v: Vec<usize> = fs.iter().flatten().copied().collect();
        v.sort();
        v.dedup();
        v
    };
    let (va, vb) = (verts(a), verts(b));
    if va.len() != vb.len() || a.len() != b.len() {
        return false;
    }
    let mut target: Vec<[usize; 3]> = b.iter().map(|f| normalize(*f)).collect();
    target.sort();
    let mut perm: Vec<usize> = (0..vb.len()).collect();
    loop {
        let phi = |x: usize| vb[perm[va.iter().position(|y| *y == x).unwrap()]];
        if ra.iter().map(|x| phi(*x)).collect::<Vec<_>>() == rb {
            let mut image: Vec<[usize; 3]> = a
                .iter()
                .map(|f| normalize([phi(f[0]), phi(f[1]), phi(f[2])]))
                .collect();
            image.sort();
            if image == target {
                return true;
            }
        }
        // next permutation
        let n = perm.len();
        let mut i = n.saturating_sub(1);
        while i > 0 && perm[i - 1] >= perm[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while perm[j] <= perm[i - 1] {
            j -= 1;
        }
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

fn ball_faces(map: &RootedTriangulation, r: usize) -> Vec<[usize; 3]> {
    map.ball(r)
        .faces()
        .iter()
        .map(|f| map.face(*f).map(|x| x.0))
        .collect()
}

fn root_triple(map: &RootedTriangulation) -> [usize; 3] {
    let f = map.face(map.root().face);
    let c = map.root().corner;
    [f[c].0, f[(c + 1) % 3].0, f[(c + 2) % 3].0]
}

#[test]
fn ball_of_single_triangle() {
    let t = single_triangle();
    let b0 = t.ball(0);
    assert_eq!(b0.vertices(), &[v(0)]);
    assert_eq!(b0.n_faces(), 0);
    let b1 = t.ball(1);
    assert_eq!(b1.faces(), &[FaceId(0)]);
    assert_eq!(b1.vertices().len(), 3);
}

#[test]
fn ball_of_figure_word_matches_incidence_scan() {
    let m = plus("BRbRRbBBrrRBRR");
    assert_eq!(m.n_faces(), 14);
    let root = m.root_vertex();
    assert_eq!(root, v(0));
    let scan: Vec<FaceId> = (0..m.n_faces())
        .filter(|f| m.face(FaceId(*f)).contains(&root))
        .map(FaceId)
        .collect();
    assert_eq!(m.ball(1).faces(), scan.as_slice());

    let dist = naive_distances(&m, root);
    for r in 1..6 {
        let scan: Vec<FaceId> = (0..m.n_faces())
            .filter(|f| {
                m.face(FaceId(*f))
                    .iter()
                    .any(|x| dist[x.0].is_some_and(|d| d + 1 <= r as u32))
            })
            .map(FaceId)
            .collect();
        assert_eq!(m.ball(r).faces(), scan.as_slice(), "radius {r}");
    }
}

#[test]
fn rooted_isomorphism_examples() {
    let t = plus("BRbRRbBBrrRBRR");
    assert!(rooted_isomorphic(&t, &t.clone()));
    assert!(!rooted_isomorphic(&single_triangle(), &two_triangles()));
    assert!(!rooted_isomorphic(&plus("Bb"), &plus("BB")));
    // Relabelling vertices does not matter.
    let faces: Vec<[VertexId; 3]> = (0..7).map(|i| [v(7), v(i), v((i + 1) % 7)]).collect();
    let relabelled =
        RootedTriangulation::from_faces(8, &faces, Root::new(FaceId(0), 0), SurfaceKind::Disc)
            .unwrap();
    assert!(rooted_isomorphic(&wheel(7), &relabelled));
    // Moving the root corner changes the rooted map.
    let moved = wheel(7).with_root(Root::new(FaceId(0), 1)).unwrap();
    assert!(!rooted_isomorphic(&wheel(7), &moved));
}

#[test]
fn rooted_isomorphism_excludes_reflections() {
    // A fan of three triangles around vertex 0 rooted at the left end versus
    // the same fan rooted at the right end: mirror images, not rotations.
    let faces = [
        [v(0), v(1), v(2)],
        [v(0), v(2), v(3)],
        [v(0), v(3), v(4)],
        [v(1), v(5), v(2)],
    ];
    let a = RootedTriangulation::from_faces(6, &faces, Root::new(FaceId(1), 0), SurfaceKind::Disc)
        .unwrap();
    let b = a.mirrored();
    assert_eq!(a.n_faces(), b.n_faces());
    assert!(!rooted_isomorphic(&a, &b));
}

#[test]
fn combinatorial_distance_examples() {
    let t = plus("BRbRRbBBrrRBRR");
    assert_eq!(combinatorial_distance(&t, &t), CombinatorialDistance::Zero);
    assert_eq!(
        combinatorial_distance(&single_triangle(), &two_triangles()).value(),
        1.0
    );

    for (x, y) in [
        ("BBBB", "BBBr"),
        ("BBBB", "BBRB"),
        ("BRBR", "BRRB"),
        ("BBbR", "BRBb"),
        ("RBrB", "RBBr"),
    ] {
        let (a, b) = (plus(x), plus(y));
        let mut oracle = CombinatorialDistance::Zero;
        for r in 1..20 {
            if !brute_force_equivalent(
                &ball_faces(&a, r),
                root_triple(&a),
                &ball_faces(&b, r),
                root_triple(&b),
            ) {
                oracle = CombinatorialDistance::Reciprocal(r - 1);
                break;
            }
        }
        assert_eq!(combinatorial_distance(&a, &b), oracle, "{x} {y}");
    }
    assert_ne!(
        combinatorial_distance(&plus("BBBB"), &plus("BBRB")),
        CombinatorialDistance::Zero
    );
}

#[test]
fn canonical_codes_agree_with_brute_force_on_small_words() {
    // Parallel-edge-free pairs only, so vertex triples determine the gluing.
    let words: Vec<Word> = (1..=3).flat_map(Word::all_of_length).collect();
    let simple: Vec<RootedTriangulation> = words
        .iter()
        .map(|w| build_plus(w).unwrap().map)
        .filter(|m| {
            m.n_edges() == {
                let mut pairs: Vec<(usize, usize)> = m
                    .faces()
                    .flat_map(|f| {
                        (0..3).map(move |i| {
                            (f[i].0.min(f[(i + 1) % 3].0), f[i].0.max(f[(i + 1) % 3].0))
                        })
                    })
                    .collect();
                pairs.sort();
                pairs.dedup();
                pairs.len()
            }
        })
        .collect();
    for a in &simple {
        for b in &simple {
            let fa: Vec<[usize; 3]> = a.faces().map(|f| f.map(|x| x.0)).collect();
            let fb: Vec<[usize; 3]> = b.faces().map(|f| f.map(|x| x.0)).collect();
            assert_eq!(
                rooted_isomorphic(a, b),
                brute_force_equivalent(&fa, root_triple(a), &fb, root_triple(b))
            );
        }
    }
}

#[test]
fn boundary_distance_examples() {
    let t = single_triangle();
    for i in 0..3 {
        assert_eq!(t.boundary_distance(v(i)), Some(0));
    }
    assert_eq!(wheel(7).boundary_distance(v(0)), Some(1));
    assert_eq!(bipyramid().boundary_distance(v(0)), None);

    let m = plus("BRbRRbBBrrRBRR");
    let flags = m.boundary_vertex_flags();
    let dist = naive_distances(&m, v(0));
    let oracle = (0..m.n_vertices())
        .filter(|w| flags[*w])
        .filter_map(|w| dist[w])
        .min();
    assert_eq!(m.boundary_distance(v(0)), oracle);
}

#[test]
fn dual_graph_examples() {
    let d = single_triangle().dual_graph();
    assert_eq!((d.n_nodes(), d.n_edges()), (1, 0));
    let d = two_triangles().dual_graph();
    assert_eq!((d.n_nodes(), d.n_edges()), (2, 1));
    let s = bipyramid();
    assert_eq!(s.n_faces(), 2 * s.n_vertices() - 4);
    assert_eq!(s.n_edges(), 3 * s.n_vertices() - 6);
    let d = s.dual_graph();
    assert_eq!(d.n_nodes(), 6);
    assert!((0..6).all(|f| d.degree(FaceId(f)) == 3));
}

#[test]
fn euler_counts() {
    assert_eq!(bipyramid().euler_characteristic(), 2);
    assert_eq!(wheel(7).euler_characteristic(), 1);
    assert_eq!(plus("BRbRRbBBrrRBRR").euler_characteristic(), 1);
}

#[test]
fn corner_fans_cover_every_corner_once() {
    let m = plus("BRbRRbBBrrRBRR");
    let mut seen = vec![0; m.n_half_edges()];
    let mut visited = std::collections::HashSet::new();
    for h in 0..m.n_half_edges() {
        let vtx = m.origin(HalfEdgeId(h));
        if visited.insert(vtx) {
            for c in m.corner_fan(HalfEdgeId(h)) {
                assert_eq!(m.origin(c), vtx);
                seen[c.0] += 1;
            }
        }
    }
    assert!(seen.iter().all(|s| *s == 1));
}

#[test]
fn emit_single_triangle() {
    assert_eq!(
        emit(&single_triangle()),
        "tri 3 1 disc\nf 0 1 2\nroot 0 0\n"
    );
}

#[test]
fn text_round_trip() {
    for w in ["BRbR", "Bb", "BRbRRbBBrrRBRR", "bRrBbBrrbRBb"] {
        let t = plus(w);
        let back = parse(&emit(&t)).unwrap();
        assert!(rooted_isomorphic(&t, &back), "{w}");
        assert_eq!(back, t);
    }
    let s = bipyramid();
    assert!(rooted_isomorphic(&s, &parse(&emit(&s)).unwrap()));
}

#[test]
fn parallel_edges_need_explicit_gluing_lines() {
    let t = plus("Bb");
    let text = emit(&t);
    assert!(text.contains("\nb "), "{text}");
    // Without the explicit lines the two boundary edges 0-1 would be glued.
    let stripped: String = text
        .lines()
        .filter(|l| !l.starts_with("b ") && !l.starts_with("t "))
        .map(|l| format!("{l}\n"))
        .collect();
    assert!(parse(&stripped).is_err());
}

#[test]
fn parse_errors_are_distinct() {
    assert_eq!(
        parse("triangle 3 1 disc\n"),
        Err(ParseError::MalformedHeader)
    );
    assert_eq!(parse("tri 3 1 torus\n"), Err(ParseError::MalformedHeader));
    assert_eq!(
        parse("tri 4 1 disc\nf 0 1 2 3\nroot 0 0\n"),
        Err(ParseError::NonTriangularFace { line: 2 })
    );
    assert_eq!(
        parse("tri 3 1 disc\nf 0 1 1\nroot 0 0\n"),
        Err(ParseError::LoopEdge { line: 2 })
    );
    assert_eq!(
        parse("tri 6 2 disc\nf 0 1 2\nf 3 4 5\nroot 0 0\n"),
        Err(ParseError::Disconnected)
    );
    assert_eq!(
        parse("tri 3 1 disc\nf 0 1 2\n"),
        Err(ParseError::MissingRoot)
    );
    assert!(matches!(
        parse("tri 3 1 sphere\nf 0 1 2\nroot 0 0\n"),
        Err(ParseError::Invalid(MapError::WrongTopology { .. }))
    ));
}

#[test]
fn mirror_is_an_involution() {
    let t = plus("BRbRRbBBrrRBRR");
    assert_eq!(t.mirrored().mirrored(), t);
    assert_eq!(t.mirrored().euler_characteristic(), 1);
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(0usize..4, 1..max).prop_map(|v| {
            Word::new(
                v.into_iter()
                    .map(|i| crate::necklace::Letter::ALL[i])
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn disc_euler_and_dual_degree(w in word_strategy(200)) {
            let m = build_plus(&w).unwrap().map;
            prop_assert_eq!(m.euler_characteristic(), 1);
            prop_assert_eq!(m.boundary_cycles().len(), 1);
            let d = m.dual_graph();
            for f in 0..m.n_faces() {
                let interior = (0..3).all(|s| m.twin(HalfEdgeId::of(FaceId(f), s)).is_some());
                prop_assert!(d.degree(FaceId(f)) <= 3);
                if interior {
                    prop_assert_eq!(d.degree(FaceId(f)), 3);
                }
            }
        }

        #[test]
        fn balls_are_nested(w in word_strategy(120), k in 0usize..120) {
            let m = build_plus(&w).unwrap();
            let m = m.rerooted(1 + k % w.len()).unwrap().map;
            for r in 0..6 {
                let small = m.ball(r);
                let big = m.ball(r + 1);
                prop_assert!(small.faces().iter().all(|f| big.contains_face(*f)));
                let verts: std::collections::HashSet<_> = small.vertices().iter().collect();
                for f in big.faces() {
                    prop_assert!(m.face(*f).iter().any(|x| verts.contains(x)));
                }
            }
        }

        #[test]
        fn combinatorial_distance_is_symmetric(a in word_strategy(40), b in word_strategy(40)) {
            let ma = build_plus(&a).unwrap().map;
            let mb = build_plus(&b).unwrap().map;
            prop_assert_eq!(ma.combinatorial_distance(&mb), mb.combinatorial_distance(&ma));
            prop_assert_eq!(
                ma.combinatorial_distance(&mb) == CombinatorialDistance::Zero,
                rooted_isomorphic(&ma, &mb)
            );
        }

        #[test]
        fn text_format_round_trips(w in word_strategy(150)) {
            let m = build_plus(&w).unwrap().map;
            let back = parse(&emit(&m)).unwrap();
            prop_assert!(rooted_isomorphic(&m, &back));
        }
    }
}
