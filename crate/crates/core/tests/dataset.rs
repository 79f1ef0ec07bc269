use std::io::Write;

use catmodes::{load_dataset, parse_dataset, Assignment, Error, Schema};
use proptest::prelude::*;

fn token() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["a", "b", "c", "?", "x1", "long-token"]).prop_map(String::from)
}

fn table() -> impl Strategy<Value = Vec<Vec<String>>> {
    (1usize..5, 1usize..30)
        .prop_flat_map(|(m, n)| prop::collection::vec(prop::collection::vec(token(), m), n))
}

proptest! {
    #[test]
    fn decoding_reproduces_tokens(rows in table()) {
        let text: String = rows.iter().map(|r| r.join(",") + "\n").collect();
        let ds = parse_dataset(&text, &Schema::default(), "t".as_ref()).unwrap();
        prop_assert_eq!(ds.n(), rows.len());
        for (i, r) in rows.iter().enumerate() {
            prop_assert_eq!(ds.decode_row(i), r.iter().map(String::as_str).collect::<Vec<_>>());
        }
        for (j, dict) in ds.dictionaries().iter().enumerate() {
            let mut seen = dict.clone();
            seen.sort();
            seen.dedup();
            prop_assert_eq!(seen.len(), dict.len());
            prop_assert!(ds.rows().all(|r| (r[j] as usize) < dict.len()));
        }
        // parsing is a pure function of the text
        prop_assert_eq!(&ds, &parse_dataset(&text, &Schema::default(), "t".as_ref()).unwrap());
    }

    #[test]
    fn cluster_tables_sum_to_global(rows in table(), k in 1usize..5, salt in any::<u64>()) {
        let text: String = rows.iter().map(|r| r.join(",") + "\n").collect();
        let ds = parse_dataset(&text, &Schema::default(), "t".as_ref()).unwrap();
        let labels: Vec<usize> = (0..ds.n())
            .map(|i| ((i as u64).wrapping_mul(2654435761).wrapping_add(salt) % k as u64) as usize)
            .collect();
        let a = Assignment::new(labels, k).unwrap();
        let global = ds.global_frequency_table();
        let tables: Vec<_> = (0..k).map(|l| ds.cluster_frequency_table(&a, l).unwrap()).collect();
        prop_assert_eq!(&tables, &ds.cluster_frequency_tables(&a).unwrap());
        for j in 0..ds.m() {
            prop_assert_eq!(global.attribute(j).iter().sum::<usize>(), ds.n());
            for code in 0..ds.domain_size(j) as u32 {
                let total: usize = tables.iter().map(|t| t.count(j, code)).sum();
                prop_assert_eq!(total, global.count(j, code));
            }
        }
    }
}

#[test]
fn loads_from_disk() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "p,x,s,n").unwrap();
    writeln!(f, "e,x,y,?").unwrap();
    writeln!(f, "e,b,s,n").unwrap();
    let schema = Schema {
        class_column: Some(0),
        ..Schema::default()
    };
    let ds = load_dataset(f.path(), &schema).unwrap();
    assert_eq!((ds.n(), ds.m()), (3, 3));
    assert_eq!(ds.labels().unwrap().distribution(), vec![1, 2]);
    assert_eq!(ds.value(2, ds.row(1)[2]), "?");
    assert_eq!(ds, load_dataset(f.path(), &schema).unwrap());
}

#[test]
fn missing_file_is_io_error() {
    assert!(matches!(
        load_dataset("/definitely/not/here.data", &Schema::default()),
        Err(Error::Io { .. })
    ));
}
