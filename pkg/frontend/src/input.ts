// Input widgets: a key-hold squeeze ramp per channel, slider overrides, the
// pointer-driven hand, and the six action buttons. Everything here only
// produces wire messages; game consequences come back as snapshots.

import {
    ActionName,
    ClientMessage,
    CubeView,
    ScriptOp,
    opToMessage,
} from "./protocol.js";

export const ADC_MAX = 1023;

export type RampConfig = {
    floor: number;      // idle ADC (the glove's deadband)
    riseMs: number;     // time from floor to saturation while held
    decayMs: number;    // time back to floor after release
    tickMs: number;
};

export const DEFAULT_RAMP: RampConfig = {
    floor: 20,
    riseMs: 700,
    decayMs: 250,
    tickMs: 20,
};

// Hold-to-squeeze: holding the key ramps the channel's ADC toward full
// scale and saturates there; releasing decays back to the floor.
export class SqueezeRamp {
    private value: number;

    constructor(private cfg: RampConfig = DEFAULT_RAMP) {
        this.value = cfg.floor;
    }

    step(held: boolean): number {
        const span = ADC_MAX - this.cfg.floor;
        if (held) {
            const rise = span * this.cfg.tickMs / this.cfg.riseMs;
            this.value = Math.min(ADC_MAX, this.value + rise);
        } else {
            const fall = span * this.cfg.tickMs / this.cfg.decayMs;
            this.value = Math.max(this.cfg.floor, this.value - fall);
        }
        return Math.round(this.value);
    }

    current(): number {
        return Math.round(this.value);
    }
}

export type ControllerState = {
    connected: boolean;
    banner: string | null;
    handX: number;
    handY: number;
    thumbHeld: boolean;
    palmHeld: boolean;
    sliderOverride: { thumb: number; palm: number } | null;
};

// Translates widget events into wire messages. A send function is injected
// so tests can capture the stream without a socket.
export class InputController {
    readonly state: ControllerState = {
        connected: true,
        banner: null,
        handX: 0,
        handY: 0.3,
        thumbHeld: false,
        palmHeld: false,
        sliderOverride: null,
    };

    private thumbRamp: SqueezeRamp;
    private palmRamp: SqueezeRamp;

    constructor(private send: (msg: ClientMessage) => void,
                ramp: RampConfig = DEFAULT_RAMP) {
        this.thumbRamp = new SqueezeRamp(ramp);
        this.palmRamp = new SqueezeRamp(ramp);
    }

    private guarded(msg: ClientMessage): void {
        if (!this.state.connected) return; // input suspended while disconnected
        this.send(msg);
    }

    disconnected(reason: string): void {
        this.state.connected = false;
        this.state.banner = reason;
    }

    pointerMove(xM: number, yM: number): void {
        this.state.handX = xM;
        this.state.handY = yM;
        this.guarded({ type: "hand", y_m: yM, x_m: xM });
    }

    setKey(channel: "thumb" | "palm", held: boolean): void {
        if (channel === "thumb") this.state.thumbHeld = held;
        else this.state.palmHeld = held;
    }

    setSliders(thumb: number, palm: number): void {
        this.state.sliderOverride = { thumb, palm };
        this.guarded({ type: "force", thumb_adc: thumb, palm_adc: palm });
    }

    clearSliders(): void {
        this.state.sliderOverride = null;
    }

    // Called at the input rate (50 Hz nominal): emits the current squeeze.
    forceTick(): void {
        if (this.state.sliderOverride !== null) return; // slider already sent
        const thumb = this.thumbRamp.step(this.state.thumbHeld);
        const palm = this.palmRamp.step(this.state.palmHeld);
        this.guarded({ type: "force", thumb_adc: thumb, palm_adc: palm });
    }

    clickAction(name: ActionName, cubes?: CubeView[]): void {
        if (name === "grab") {
            const cube = this.nearestCube(cubes ?? []);
            if (cube === null) return;
            this.guarded({ type: "action", name, cube });
            return;
        }
        this.guarded({ type: "action", name });
    }

    // Cursor semantics, not game rules: grab targets whichever cube is
    // nearest the hand cursor. Legality is the server's call.
    private nearestCube(cubes: CubeView[]): number | null {
        let best: number | null = null;
        let bestDist = Infinity;
        for (const cube of cubes) {
            const d = Math.hypot(cube.x - this.state.handX,
                                 cube.display_y - this.state.handY);
            if (d < bestDist) {
                bestDist = d;
                best = cube.id;
            }
        }
        return best;
    }

    // Headless script driver: replays UI-level operations through the same
    // code paths the widgets use, one wire message per op.
    runScript(ops: ScriptOp[], cubes?: CubeView[]): void {
        for (const op of ops) {
            if (op.op === "hand") {
                this.pointerMove(op.x, op.y);
            } else if (op.op === "sliders") {
                this.setSliders(op.thumb, op.palm);
            } else if (op.op === "click" && op.name === "grab"
                       && op.cube === undefined) {
                this.clickAction("grab", cubes);
            } else {
                this.guarded(opToMessage(op));
            }
        }
    }
}
