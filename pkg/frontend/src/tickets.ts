// Ticket chips: queued -> resolving -> downloading -> committed | failed,
// driven purely by server events; "unknown" after a reconnect until the
// server speaks about the ticket again.

export type ChipState =
  | "queued"
  | "resolving"
  | "downloading"
  | "committed"
  | "failed"
  | "unknown";

export interface TicketChip {
  ticket: string;
  text: string;
  state: ChipState;
  detail: string;
}

export class TicketBoard {
  chips = new Map<string, TicketChip>();
  private pendingRequests = new Map<string, string>(); // request_id -> text

  submit(requestId: string, text: string): void {
    this.pendingRequests.set(requestId, text);
  }

  handleSubmitResult(data: {
    request_id: string;
    ticket?: string;
    error?: string;
    detail?: string;
  }): TicketChip | null {
    const text = this.pendingRequests.get(data.request_id) ?? "";
    this.pendingRequests.delete(data.request_id);
    if (data.ticket) {
      const chip: TicketChip = {
        ticket: data.ticket,
        text,
        state: "queued",
        detail: "",
      };
      // a ticket_status event may have arrived first; keep its state
      const existing = this.chips.get(data.ticket);
      this.chips.set(data.ticket, existing ? { ...existing, text } : chip);
      return this.chips.get(data.ticket)!;
    }
    const chip: TicketChip = {
      ticket: `rejected:${data.request_id}`,
      text,
      state: "failed",
      detail: data.detail ?? data.error ?? "rejected",
    };
    this.chips.set(chip.ticket, chip);
    return chip;
  }

  handleTicketStatus(data: {
    ticket: string;
    state: string;
    detail?: string;
    client?: string;
  }): void {
    const existing = this.chips.get(data.ticket);
    this.chips.set(data.ticket, {
      ticket: data.ticket,
      text: existing?.text ?? "",
      state: data.state as ChipState,
      detail: data.detail ?? "",
    });
  }

  markAllUnknown(): void {
    for (const [ticket, chip] of this.chips) {
      if (chip.state !== "committed" && chip.state !== "failed") {
        this.chips.set(ticket, { ...chip, state: "unknown" });
      }
    }
  }

  chip(ticket: string): TicketChip | undefined {
    return this.chips.get(ticket);
  }

  list(): TicketChip[] {
    return [...this.chips.values()];
  }
}
