/* tslint:disable */
/* eslint-disable */

/**
 * Interactive walk through the pseudotriangulations of `D_n`.
 */
export class DExplorer {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Flips the pair with element id `removed`.
     */
    flip(removed: number): string;
    /**
     * Flips the chord closest to the point `(x, y)` (unit-circle coordinates).
     */
    flip_nearest(x: number, y: number): string;
    /**
     * Starts at the left star.
     */
    constructor(n: number);
    reset(right: boolean): void;
    state_json(): string;
    undo(): boolean;
}

/**
 * The `2n - 2` flips from the left star to the right star, as drawable
 * states.
 */
export function star_path_json(n: number, base: number): string;

/**
 * Vertex count, diameter and NLFP result for type `A`, `B` or `D` of rank `n`.
 */
export function summary_json(family: string, n: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_dexplorer_free: (a: number, b: number) => void;
    readonly dexplorer_flip: (a: number, b: number) => [number, number, number, number];
    readonly dexplorer_flip_nearest: (a: number, b: number, c: number) => [number, number, number, number];
    readonly dexplorer_new: (a: number) => [number, number, number];
    readonly dexplorer_reset: (a: number, b: number) => void;
    readonly dexplorer_state_json: (a: number) => [number, number, number, number];
    readonly dexplorer_undo: (a: number) => number;
    readonly star_path_json: (a: number, b: number) => [number, number, number, number];
    readonly summary_json: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
