//! Published known-answer vectors: FIPS 180-4, RFC 4231, FIPS 197, SP 800-38A.

pub struct HashVector {
    pub message: &'static [u8],
    pub repeat: usize,
    pub digest: &'static str,
}

pub const SHA256: &[HashVector] = &[
    HashVector {
        message: b"",
        repeat: 1,
        digest: "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855",
    },
    HashVector {
        message: b"abc",
        repeat: 1,
        digest: "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad",
    },
    HashVector {
        message: b"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq",
        repeat: 1,
        digest: "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1",
    },
    HashVector {
        message: b"abcdefghbcdefghicdefghijdefghijkefghijklfghijklmghijklmnhijklmnoijklmnopjklmnopqklmnopqrlmnopqrsmnopqrstnopqrstu",
        repeat: 1,
        digest: "cf5b16a778af8380036ce59e7b0492370b249b11e8f07a51afac45037afee9d1",
    },
    HashVector {
        message: b"a",
        repeat: 1_000_000,
        digest: "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0",
    },
];

pub struct MacVector {
    pub case: u32,
    pub key: Vec<u8>,
    pub data: Vec<u8>,
    /// Case 5 checks only the leading 128 bits.
    pub tag: &'static str,
}

pub fn rfc4231() -> Vec<MacVector> {
    vec![
        MacVector {
            case: 1,
            key: vec![0x0b; 20],
            data: b"Hi There".to_vec(),
            tag: "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7",
        },
        MacVector {
            case: 2,
            key: b"Jefe".to_vec(),
            data: b"what do ya want for nothing?".to_vec(),
            tag: "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843",
        },
        MacVector {
            case: 3,
            key: vec![0xaa; 20],
            data: vec![0xdd; 50],
            tag: "773ea91e36800e46854db8ebd09181a72959098b3ef8c122d9635514ced565fe",
        },
        MacVector {
            case: 4,
            key: (1..=25).collect(),
            data: vec![0xcd; 50],
            tag: "82558a389a443c0ea4cc819899f2083a85f0faa3e578f8077a2e3ff46729665b",
        },
        MacVector {
            case: 5,
            key: vec![0x0c; 20],
            data: b"Test With Truncation".to_vec(),
            tag: "a3b6167473100ee06e0c796c2955552b",
        },
        MacVector {
            case: 6,
            key: vec![0xaa; 131],
            data: b"Test Using Larger Than Block-Size Key - Hash Key First".to_vec(),
            tag: "60e431591ee0b67f0d8a26aacbf5b77f8e0bc6213728c5140546040f0ee37f54",
        },
        MacVector {
            case: 7,
            key: vec![0xaa; 131],
            data: b"This is a test using a larger than block-size key and a larger than block-size data. The key needs to be hashed before being used by the HMAC algorithm.".to_vec(),
            tag: "9b09ffa71b942fcb27635fbcd5b0e944bfdc63644f0713938a7f51535c3a35e2",
        },
    ]
}

pub struct BlockVector {
    pub name: &'static str,
    pub key: &'static str,
    pub plaintext: &'static str,
    pub ciphertext: &'static str,
}

pub const FIPS197_BLOCKS: &[BlockVector] = &[
    BlockVector {
        name: "FIPS 197 B",
        key: "2b7e151628aed2a6abf7158809cf4f3c",
        plaintext: "3243f6a8885a308d313198a2e0370734",
        ciphertext: "3925841d02dc09fbdc118597196a0b32",
    },
    BlockVector {
        name: "FIPS 197 C.1",
        key: "000102030405060708090a0b0c0d0e0f",
        plaintext: "00112233445566778899aabbccddeeff",
        ciphertext: "69c4e0d86a7b0430d8cdb78070b4c55a",
    },
    BlockVector {
        name: "FIPS 197 C.2",
        key: "000102030405060708090a0b0c0d0e0f1011121314151617",
        plaintext: "00112233445566778899aabbccddeeff",
        ciphertext: "dda97ca4864cdfe06eaf70a0ec0d7191",
    },
    BlockVector {
        name: "FIPS 197 C.3",
        key: "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f",
        plaintext: "00112233445566778899aabbccddeeff",
        ciphertext: "8ea2b7ca516745bfeafc49904b496089",
    },
];

/// Last four schedule words of the FIPS 197 Appendix A expansions.
pub const FIPS197_SCHEDULE_TAILS: &[(&str, [u32; 4])] = &[
    (
        "2b7e151628aed2a6abf7158809cf4f3c",
        [0xd014f9a8, 0xc9ee2589, 0xe13f0cc8, 0xb6630ca6],
    ),
    (
        "8e73b0f7da0e6452c810f32b809079e562f8ead2522c6b7b",
        [0xe98ba06f, 0x448c773c, 0x8ecc7204, 0x01002202],
    ),
    (
        "603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4",
        [0xfe4890d1, 0xe6188d0b, 0x046df344, 0x706c631e],
    ),
];

pub const SP800_38A_PLAINTEXT: &str = "6bc1bee22e409f96e93d7e117393172a\
ae2d8a571e03ac9c9eb76fac45af8e51\
30c81c46a35ce411e5fbc1191a0a52ef\
f69f2445df4f9b17ad2b417be66c3710";

pub const SP800_38A_IV: &str = "000102030405060708090a0b0c0d0e0f";

pub struct ModeVector {
    pub name: &'static str,
    pub cbc: bool,
    pub key: &'static str,
    pub ciphertext: &'static str,
}

/// F.1.1/F.1.2, F.1.3/F.1.4, F.1.5/F.1.6 (ECB) and the F.2 equivalents
/// (CBC). Each entry covers both the encrypt and decrypt vector.
pub const SP800_38A: &[ModeVector] = &[
    ModeVector {
        name: "F.1.1/F.1.2 ECB-AES128",
        cbc: false,
        key: "2b7e151628aed2a6abf7158809cf4f3c",
        ciphertext: "3ad77bb40d7a3660a89ecaf32466ef97f5d3d58503b9699de785895a96fdbaaf\
43b1cd7f598ece23881b00e3ed0306887b0c785e27e8ad3f8223207104725dd4",
    },
    ModeVector {
        name: "F.1.3/F.1.4 ECB-AES192",
        cbc: false,
        key: "8e73b0f7da0e6452c810f32b809079e562f8ead2522c6b7b",
        ciphertext: "bd334f1d6e45f25ff712a214571fa5cc974104846d0ad3ad7734ecb3ecee4eef\
ef7afd2270e2e60adce0ba2face6444e9a4b41ba738d6c72fb16691603c18e0e",
    },
    ModeVector {
        name: "F.1.5/F.1.6 ECB-AES256",
        cbc: false,
        key: "603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4",
        ciphertext: "f3eed1bdb5d2a03c064b5a7e3db181f8591ccb10d410ed26dc5ba74a31362870\
b6ed21b99ca6f4f9f153e7b1beafed1d23304b7a39f9f3ff067d8d8f9e24ecc7",
    },
    ModeVector {
        name: "F.2.1/F.2.2 CBC-AES128",
        cbc: true,
        key: "2b7e151628aed2a6abf7158809cf4f3c",
        ciphertext: "7649abac8119b246cee98e9b12e9197d5086cb9b507219ee95db113a917678b2\
73bed6b8e3c1743b7116e69e222295163ff1caa1681fac09120eca307586e1a7",
    },
    ModeVector {
        name: "F.2.3/F.2.4 CBC-AES192",
        cbc: true,
        key: "8e73b0f7da0e6452c810f32b809079e562f8ead2522c6b7b",
        ciphertext: "4f021db243bc633d7178183a9fa071e8b4d9ada9ad7dedf4e5e738763f69145a\
571b242012fb7ae07fa9baac3df102e008b0e27988598881d920a9e64f5615cd",
    },
    ModeVector {
        name: "F.2.5/F.2.6 CBC-AES256",
        cbc: true,
        key: "603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4",
        ciphertext: "f58c4c04d6e5f1ba779eabfb5f7bfbd69cfc4e967edb808d679f777bc6702c7d\
39f23369a9d9bacfa530e26304231461b2eb05e2c39be9fcda6c19078c6a9d1b",
    },
];
